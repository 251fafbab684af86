#include "typebot/lexicon.hpp"

namespace typebot::lexicon_data {

const std::vector<std::string>& default_fillers()
{
    static const std::vector<std::string> words = {
        "well",    "like",     "really",   "actually", "just",       "so",        "basically", "literally",
        "totally", "honestly", "kinda",    "pretty",   "quite",      "maybe",     "um",        "hmm",
        "anyway",  "surely",   "seriously", "very",    "super",      "probably",  "oh",        "definitely",
        "simply",  "truly",    "still",    "also",     "perhaps",    "generally", "mostly",    "personally",
    };
    return words;
}

const SynonymMap& default_synonyms()
{
    static const SynonymMap map = {
        {"able", {"capable", "fit"}},
        {"about", {"around", "roughly", "approximately"}},
        {"active", {"busy", "lively", "energetic"}},
        {"actually", {"really", "truly"}},
        {"afraid", {"scared", "nervous"}},
        {"also", {"too", "additionally"}},
        {"amazing", {"incredible", "wonderful", "fantastic", "astonishing"}},
        {"answer", {"reply", "response"}},
        {"anything", {"whatever"}},
        {"area", {"region", "zone", "place"}},
        {"ask", {"inquire", "query"}},
        {"awesome", {"great", "fantastic", "brilliant"}},
        {"bad", {"poor", "awful", "terrible"}},
        {"beautiful", {"lovely", "gorgeous", "pretty", "stunning"}},
        {"begin", {"start", "commence"}},
        {"believe", {"think", "trust", "reckon"}},
        {"best", {"finest", "greatest", "top"}},
        {"better", {"superior", "finer"}},
        {"big", {"large", "huge", "massive", "sizable"}},
        {"book", {"novel", "volume"}},
        {"boring", {"dull", "tedious"}},
        {"build", {"construct", "make", "create"}},
        {"busy", {"occupied", "engaged"}},
        {"buy", {"purchase", "get"}},
        {"calm", {"relaxed", "peaceful", "serene"}},
        {"car", {"vehicle", "automobile"}},
        {"care", {"concern", "attention"}},
        {"change", {"alter", "modify", "shift"}},
        {"cheap", {"inexpensive", "affordable"}},
        {"choose", {"pick", "select"}},
        {"clean", {"tidy", "neat"}},
        {"clear", {"obvious", "plain", "evident"}},
        {"clever", {"smart", "bright", "sharp"}},
        {"close", {"near", "nearby"}},
        {"cold", {"chilly", "cool", "frosty"}},
        {"common", {"usual", "typical", "ordinary"}},
        {"complete", {"finish", "conclude"}},
        {"cook", {"prepare", "make"}},
        {"cool", {"neat", "nice", "awesome"}},
        {"correct", {"right", "accurate"}},
        {"create", {"make", "produce", "build"}},
        {"cute", {"adorable", "sweet", "charming"}},
        {"dance", {"boogie", "groove"}},
        {"decide", {"determine", "choose"}},
        {"delicious", {"tasty", "yummy", "scrumptious"}},
        {"different", {"distinct", "various", "diverse"}},
        {"difficult", {"hard", "tough", "challenging"}},
        {"easy", {"simple", "effortless", "straightforward"}},
        {"eat", {"consume", "dine"}},
        {"end", {"finish", "close", "conclusion"}},
        {"energy", {"vigor", "power", "vitality"}},
        {"enjoy", {"like", "love", "relish", "appreciate"}},
        {"enough", {"sufficient", "adequate"}},
        {"entire", {"whole", "complete"}},
        {"especially", {"particularly", "specifically"}},
        {"exciting", {"thrilling", "exhilarating"}},
        {"experience", {"encounter", "adventure"}},
        {"explain", {"describe", "clarify"}},
        {"fair", {"just", "reasonable"}},
        {"famous", {"renowned", "celebrated", "well-known"}},
        {"fantastic", {"wonderful", "superb", "marvelous"}},
        {"fast", {"quick", "rapid", "speedy", "swift"}},
        {"favorite", {"preferred", "beloved"}},
        {"feel", {"sense", "experience"}},
        {"film", {"movie", "picture"}},
        {"find", {"discover", "locate"}},
        {"fine", {"good", "okay", "alright"}},
        {"finish", {"complete", "end", "wrap"}},
        {"food", {"cuisine", "meals", "dishes"}},
        {"friend", {"buddy", "pal", "companion"}},
        {"friendly", {"kind", "warm", "welcoming"}},
        {"fun", {"enjoyable", "entertaining", "amusing"}},
        {"funny", {"hilarious", "amusing", "humorous"}},
        {"game", {"match", "contest"}},
        {"get", {"obtain", "receive", "acquire"}},
        {"give", {"provide", "offer", "hand"}},
        {"glad", {"happy", "pleased", "delighted"}},
        {"go", {"head", "travel", "move"}},
        {"good", {"great", "nice", "fine", "decent"}},
        {"great", {"excellent", "wonderful", "terrific", "superb"}},
        {"guess", {"suppose", "reckon", "imagine"}},
        {"happy", {"glad", "joyful", "cheerful", "content"}},
        {"hard", {"difficult", "tough", "challenging"}},
        {"healthy", {"fit", "well", "wholesome"}},
        {"help", {"assist", "aid", "support"}},
        {"hobby", {"pastime", "interest", "pursuit"}},
        {"hobbies", {"pastimes", "interests", "pursuits"}},
        {"hope", {"wish", "expect"}},
        {"hot", {"warm", "heated"}},
        {"huge", {"enormous", "massive", "gigantic"}},
        {"idea", {"thought", "notion", "concept"}},
        {"important", {"significant", "essential", "crucial"}},
        {"improve", {"enhance", "boost", "better"}},
        {"interesting", {"fascinating", "intriguing", "engaging"}},
        {"job", {"work", "occupation", "position"}},
        {"keep", {"retain", "maintain", "hold"}},
        {"kind", {"type", "sort"}},
        {"know", {"understand", "realize"}},
        {"large", {"big", "huge", "sizable"}},
        {"learn", {"study", "discover"}},
        {"like", {"enjoy", "love", "fancy"}},
        {"listen", {"hear", "attend"}},
        {"little", {"small", "tiny", "slight"}},
        {"live", {"reside", "dwell"}},
        {"long", {"lengthy", "extended"}},
        {"look", {"glance", "peek", "see"}},
        {"lot", {"bunch", "ton", "plenty"}},
        {"love", {"adore", "enjoy", "cherish"}},
        {"lovely", {"beautiful", "charming", "delightful"}},
        {"lucky", {"fortunate", "blessed"}},
        {"main", {"primary", "chief", "principal"}},
        {"make", {"create", "produce", "build"}},
        {"many", {"numerous", "several", "plenty"}},
        {"maybe", {"perhaps", "possibly"}},
        {"mean", {"intend", "signify"}},
        {"meet", {"encounter", "see"}},
        {"mostly", {"largely", "mainly", "primarily"}},
        {"movie", {"film", "flick", "picture"}},
        {"movies", {"films", "flicks", "pictures"}},
        {"music", {"tunes", "songs"}},
        {"need", {"require", "want"}},
        {"new", {"fresh", "novel", "recent"}},
        {"nice", {"pleasant", "lovely", "good", "kind"}},
        {"often", {"frequently", "regularly"}},
        {"old", {"aged", "ancient", "elderly"}},
        {"part", {"portion", "piece", "section"}},
        {"people", {"folks", "individuals", "persons"}},
        {"perfect", {"ideal", "flawless", "excellent"}},
        {"place", {"spot", "location", "site"}},
        {"play", {"perform", "compete"}},
        {"pleasant", {"nice", "agreeable", "enjoyable"}},
        {"popular", {"well-liked", "famous", "trendy"}},
        {"possible", {"feasible", "doable"}},
        {"pretty", {"fairly", "rather", "quite"}},
        {"problem", {"issue", "trouble", "difficulty"}},
        {"quick", {"fast", "rapid", "swift"}},
        {"quiet", {"silent", "calm", "peaceful"}},
        {"quite", {"fairly", "rather", "pretty"}},
        {"read", {"peruse", "browse"}},
        {"ready", {"prepared", "set"}},
        {"real", {"genuine", "authentic", "actual"}},
        {"really", {"truly", "genuinely", "very"}},
        {"relax", {"unwind", "rest", "chill"}},
        {"remember", {"recall", "recollect"}},
        {"right", {"correct", "proper"}},
        {"run", {"jog", "sprint", "race"}},
        {"sad", {"unhappy", "down", "gloomy"}},
        {"say", {"tell", "state", "mention"}},
        {"see", {"notice", "observe", "view"}},
        {"seem", {"appear", "look"}},
        {"share", {"swap", "exchange"}},
        {"show", {"display", "present", "reveal"}},
        {"similar", {"alike", "comparable"}},
        {"simple", {"easy", "basic", "plain"}},
        {"sing", {"chant", "croon"}},
        {"small", {"little", "tiny", "compact"}},
        {"smart", {"clever", "bright", "intelligent"}},
        {"sometimes", {"occasionally", "periodically"}},
        {"song", {"tune", "track"}},
        {"songs", {"tunes", "tracks"}},
        {"soon", {"shortly", "presently"}},
        {"special", {"unique", "particular", "distinctive"}},
        {"sport", {"game", "activity"}},
        {"sports", {"games", "athletics"}},
        {"start", {"begin", "commence", "launch"}},
        {"story", {"tale", "narrative", "account"}},
        {"strange", {"odd", "weird", "unusual"}},
        {"strong", {"powerful", "sturdy", "tough"}},
        {"stuff", {"things", "items"}},
        {"sure", {"certain", "confident", "positive"}},
        {"talk", {"chat", "speak", "converse"}},
        {"tasty", {"delicious", "flavorful", "yummy"}},
        {"team", {"squad", "crew", "group"}},
        {"tell", {"inform", "share"}},
        {"terrible", {"awful", "dreadful", "horrible"}},
        {"thing", {"item", "object", "matter"}},
        {"things", {"items", "matters", "stuff"}},
        {"think", {"believe", "feel", "reckon", "suppose"}},
        {"time", {"moment", "period", "while"}},
        {"tired", {"exhausted", "weary", "sleepy"}},
        {"together", {"jointly", "collectively"}},
        {"travel", {"journey", "tour", "explore"}},
        {"true", {"accurate", "correct", "right"}},
        {"try", {"attempt", "test"}},
        {"understand", {"grasp", "comprehend", "get"}},
        {"unique", {"distinctive", "special", "rare"}},
        {"use", {"utilize", "employ"}},
        {"useful", {"helpful", "handy", "practical"}},
        {"usually", {"typically", "normally", "generally"}},
        {"various", {"diverse", "assorted", "different"}},
        {"very", {"really", "extremely", "super"}},
        {"want", {"desire", "wish"}},
        {"watch", {"view", "see", "observe"}},
        {"way", {"method", "manner", "approach"}},
        {"weekend", {"break"}},
        {"well", {"nicely", "properly"}},
        {"whole", {"entire", "complete", "full"}},
        {"wonderful", {"marvelous", "fantastic", "lovely"}},
        {"work", {"job", "labor", "effort"}},
        {"world", {"globe", "earth", "planet"}},
        {"write", {"compose", "pen"}},
        {"wrong", {"incorrect", "mistaken"}},
        {"young", {"youthful", "junior"}},
    };
    return map;
}

} // namespace typebot::lexicon_data
