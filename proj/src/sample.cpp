#include "ulpipe/sample.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>
#include <string_view>

#include "ulpipe/rng.hpp"

namespace ulpipe {

namespace {

template <size_t N>
const char* pick(Rng& rng, const char* const (&options)[N]) {
    return options[rng.below(N)];
}

// Sentence parts are drawn first, then rendered, so derived artifacts (the
// instruction records' answers) can reuse the same draw.
struct EnParts {
    const char* adj;
    const char* role;
    const char* verb;
    const char* obj;
    const char* place;
    const char* time;
    const char* trouble;
};

EnParts en_parts(Rng& rng) {
    static const char* const kAdj[] = {"quiet",   "clever", "patient", "rusty",  "modern", "ancient",
                                       "gentle",  "rapid",  "careful", "bright", "narrow", "steady",
                                       "curious", "formal", "plain",   "sturdy"};
    static const char* const kRole[] = {"engineer", "librarian", "pilot",    "gardener",
                                        "teacher",  "sailor",    "printer",  "weaver",
                                        "surveyor", "clerk",     "miller",   "scout",
                                        "archivist", "carpenter", "farmer",  "courier"};
    static const char* const kVerb[] = {"tests",     "repairs",  "measures", "paints",
                                        "inspects",  "records",  "balances", "sharpens",
                                        "assembles", "polishes", "arranges", "labels",
                                        "stores",    "moves",    "checks",   "trims"};
    static const char* const kObj[] = {"parser",  "ledger",  "engine",  "lantern", "compass",
                                       "bridge",  "signal",  "barrel",  "cabinet", "turbine",
                                       "antenna", "keyboard", "furnace", "pulley", "bellows",
                                       "telescope"};
    static const char* const kPlace[] = {"harbor",  "market",  "station", "meadow", "library",
                                         "canal",   "orchard", "foundry", "terrace", "village",
                                         "granary", "quarry",  "depot",   "mill",   "lighthouse",
                                         "workshop"};
    static const char* const kTime[] = {"every morning", "each evening",  "twice a week",
                                        "after lunch",   "before dawn",   "during spring",
                                        "on weekends",   "at noon",       "all afternoon",
                                        "most days",     "once a month",  "after supper"};
    static const char* const kTrouble[] = {"delay", "noise",    "fuss",      "error",
                                           "waste", "doubt",    "hurry",     "damage",
                                           "friction", "guesswork", "detour", "backlog"};
    return {pick(rng, kAdj),   pick(rng, kRole), pick(rng, kVerb),   pick(rng, kObj),
            pick(rng, kPlace), pick(rng, kTime), pick(rng, kTrouble)};
}

std::string en_render(const EnParts& p) {
    std::string s = "The ";
    s += p.adj;
    s += ' ';
    s += p.role;
    s += ' ';
    s += p.verb;
    s += " the ";
    s += p.obj;
    s += " near the ";
    s += p.place;
    s += ' ';
    s += p.time;
    s += " without any ";
    s += p.trouble;
    s += '.';
    return s;
}

// Every sentence clears the ten-word-unit cleaning bar.
std::string en_sentence(Rng& rng) { return en_render(en_parts(rng)); }

struct ZhParts {
    const char* time;
    const char* subject;
    const char* place;
    const char* adv;
    const char* verb;
    const char* obj;
    bool exclaim;
};

ZhParts zh_parts(Rng& rng) {
    static const char* const kTime[] = {"今天早上", "昨天下午", "周末清晨", "傍晚时分",
                                        "初夏午后", "深秋夜里", "假期期间", "开春以后",
                                        "雨后黄昏", "节前一天", "午休之后", "入冬当天"};
    static const char* const kSubject[] = {"研究小组", "年轻工匠", "图书管理员", "巡逻队员",
                                           "老船长",   "实习编辑", "测绘人员",   "养蜂人",
                                           "装配技师", "值班医生", "登山向导",   "纺织女工"};
    static const char* const kPlace[] = {"实验室里", "车间深处", "码头旁边", "老街尽头",
                                         "山脚营地", "档案室内", "温室后面", "仓库角落",
                                         "河岸步道", "观测站上", "市场门口", "磨坊附近"};
    static const char* const kAdv[] = {"仔细地", "缓慢地", "反复地", "安静地", "熟练地", "耐心地",
                                       "轻轻地", "认真地", "逐件地", "按时地", "细致地", "从容地"};
    static const char* const kVerb[] = {"整理了", "检查了", "修复了", "记录了", "测量了", "擦拭了",
                                        "校准了", "归档了", "翻晒了", "打包了", "核对了", "调试了"};
    static const char* const kObj[] = {"全部样品",   "旧仪器",     "新到的图纸", "成堆的信件",
                                       "几箱零件",   "当月账目",   "过冬的物资", "一批标本",
                                       "备用的缆绳", "历年的档案", "刚收的谷物", "损坏的齿轮"};
    return {pick(rng, kTime), pick(rng, kSubject), pick(rng, kPlace), pick(rng, kAdv),
            pick(rng, kVerb), pick(rng, kObj),     rng.below(8) == 0};
}

std::string zh_render(const ZhParts& p) {
    std::string s = p.time;
    s += "，";
    s += p.subject;
    s += "在";
    s += p.place;
    s += p.adv;
    s += p.verb;
    s += p.obj;
    s += p.exclaim ? "！" : "。";
    return s;
}

std::string zh_sentence(Rng& rng) { return zh_render(zh_parts(rng)); }

// Every line carries a wide-space identifier so cross-document line
// collisions stay rare; repeated lines in the corpus come from the controlled
// duplicate/boilerplate injection, not from template exhaustion.
std::string code_snippet(Rng& rng) {
    auto num = [&](uint64_t bound) { return std::to_string(rng.below(bound)); };
    auto wide = [&] { return std::to_string(10000 + rng.below(90000)); };
    switch (rng.below(6)) {
        case 0:
            return "def helper_" + wide() + "(value):\n    total = value * " + num(50) + " + " +
                   wide() + "\n    return total - " + num(500) + " * " + num(9) + "\n";
        case 1: {
            std::string start = num(5000);
            return "for index in range(" + start + ", " + start + " + " + num(400) +
                   "):\n    buffer_" + wide() + ".append(index % " +
                   std::to_string(1 + rng.below(8)) + " + " + num(30) + ")\n";
        }
        case 2:
            return "class Widget" + wide() + ":\n    def __init__(self, level=" + num(64) +
                   ", tag=\"w" + wide() + "\"):\n        self.level = level + " + wide() +
                   "\n        self.name = \"unit" + wide() + "\"\n";
        case 3:
            return "if config.get(\"mode\") == \"fast" + wide() + "\":\n    runner.schedule(batch_" +
                   wide() + ", retries=" + num(6) + ")\n";
        case 4: {
            std::string queue = "queue_" + wide();
            return "while " + queue + ".pending() > " + num(40) + ":\n    " + queue +
                   ".drain(limit=" + num(500) + ", pause=" + num(1000) + ")\n";
        }
        default:
            return "results_" + wide() + " = [transform(row, scale=" + num(500) +
                   ")\n           for row in table_" + wide() + ".rows()]\n";
    }
}

std::string synthesize(Lang lang, Rng& rng, const SampleOptions& opts) {
    std::string text;
    if (lang == Lang::code) {
        size_t snippets = 9 + rng.below(4);
        for (size_t s = 0; s < snippets; ++s) {
            if (s) text += '\n';
            text += code_snippet(rng);
        }
        if (rng.unit() < opts.boilerplate_rate)
            text += "\n# shared preamble: do not edit generated sections by hand\n";
        return text;
    }
    size_t sentences = lang == Lang::zh ? 11 + rng.below(6) : 10 + rng.below(5);
    for (size_t s = 0; s < sentences; ++s) {
        if (s && lang == Lang::en) text += ' ';
        text += lang == Lang::zh ? zh_sentence(rng) : en_sentence(rng);
    }
    if (rng.unit() < opts.noise_rate) {
        if (lang == Lang::zh)
            text += "欢迎访问 https://example.com/data 获取更多资料，联系邮箱 info@example.com。";
        else
            text += " <p>Contact us at staff@example.org for extra copies today.</p>";
    }
    if (rng.unit() < opts.boilerplate_rate) {
        if (lang == Lang::zh)
            text += "以上内容仅供流程演示使用，转载请注明来源完整保留说明。";
        else
            text += " This material is shared for training demonstrations only and may be copied "
                    "freely.";
    }
    return text;
}

FlanRecord en_flan_record(Rng& rng, size_t index) {
    EnParts p = en_parts(rng);
    std::string sentence = en_render(p);
    FlanRecord rec;
    rec.lang = Lang::en;
    switch (index % 5) {
        case 0:
            rec.instruction =
                "Read the sentence and answer: who performs the action? Reply with the full noun "
                "phrase.";
            rec.input = sentence;
            rec.output = std::string("The ") + p.adj + ' ' + p.role;
            rec.domain = "reading";
            rec.task = "Question Answering";
            break;
        case 1:
            rec.instruction =
                "Decide whether the action in this sentence happens at noon. Answer strictly yes "
                "or no.";
            rec.input = sentence;
            rec.output = std::string_view(p.time) == "at noon" ? "yes" : "no";
            rec.domain = "general";
            rec.task = "Text Classification";
            break;
        case 2:
            rec.instruction = "Shorten the sentence to just its subject and verb.";
            rec.input = sentence;
            rec.output = std::string("The ") + p.role + ' ' + p.verb + '.';
            rec.domain = "writing";
            rec.task = "Text Summarization";
            break;
        case 3: {
            rec.instruction = "Rewrite the sentence using capital letters only.";
            rec.input = sentence;
            rec.output = sentence;
            for (char& c : rec.output) c = char(std::toupper((unsigned char)c));
            rec.domain = "formatting";
            rec.task = "Text Generation";
            break;
        }
        default: {
            rec.instruction = "Count the number of words in the sentence. Answer with digits only.";
            rec.input = sentence;
            size_t words = 1;
            for (char c : sentence)
                if (c == ' ') ++words;
            rec.output = std::to_string(words);
            rec.domain = "analysis";
            rec.task = "Question Answering";
            break;
        }
    }
    return rec;
}

FlanRecord zh_flan_record(Rng& rng, size_t index) {
    FlanRecord rec;
    rec.lang = Lang::zh;
    rec.domain = "多领域";
    if (index % 2 == 0) {
        ZhParts first = zh_parts(rng);
        std::string text = zh_render(first);
        size_t extra = 2 + rng.below(3);
        for (size_t s = 0; s < extra; ++s) text += zh_sentence(rng);
        rec.instruction = "请用一句话概括下面这段材料的主要内容。";
        rec.input = text;
        rec.output = std::string("这段材料主要记录了") + first.subject + "在" + first.place +
                     "完成的各项事务。";
        rec.task = "文本摘要";
    } else {
        ZhParts p = zh_parts(rng);
        std::string blanked = zh_render(p);
        size_t pos = blanked.rfind(p.obj);
        blanked.replace(pos, std::string_view(p.obj).size(), "____");
        rec.instruction = "请根据上下文补全句子中空缺的词语。";
        rec.input = blanked;
        rec.output = p.obj;
        rec.task = "完形填空";
    }
    return rec;
}

}  // namespace

std::vector<Document> make_sample_component(Lang lang, const SampleOptions& opts) {
    if (lang != Lang::zh && lang != Lang::en && lang != Lang::code)
        throw std::invalid_argument("make_sample_component: lang must be zh, en or code");
    std::string prefix(lang_name(lang));
    std::vector<Document> docs;
    docs.reserve(opts.docs);
    for (size_t i = 0; i < opts.docs; ++i) {
        Rng rng(derive_seed(opts.seed, prefix + "/doc/" + std::to_string(i)));
        Document doc;
        char id[32];
        std::snprintf(id, sizeof id, "%s-%06zu", prefix.c_str(), i);
        doc.id = id;
        doc.lang = lang;
        doc.source = "sample";
        if (i > 0 && rng.unit() < opts.dup_rate)
            doc.text = docs[rng.below(i)].text;  // exact duplicate of an earlier document
        else
            doc.text = synthesize(lang, rng, opts);
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<FlanRecord> make_sample_flan(Lang lang, size_t count, uint64_t seed) {
    if (lang != Lang::zh && lang != Lang::en)
        throw std::invalid_argument("make_sample_flan: lang must be zh or en");
    std::string prefix = lang == Lang::zh ? "flan_zh" : "flan_en";
    std::vector<FlanRecord> recs;
    recs.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        Rng rng(derive_seed(seed, prefix + "/rec/" + std::to_string(i)));
        recs.push_back(lang == Lang::zh ? zh_flan_record(rng, i) : en_flan_record(rng, i));
    }
    return recs;
}

}  // namespace ulpipe
