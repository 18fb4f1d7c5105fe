#include "ordltl/json_io.hpp"

#include <json.hpp>

namespace ordltl {

using nlohmann::ordered_json;

namespace {

ordered_json to_json(const Word& w)
{
    switch (w.kind()) {
    case Word::Kind::Single: {
        ordered_json props = ordered_json::array();
        for (const Proposition& p : w.letter()) props.push_back(p.name());
        return {{"letter", props}};
    }
    case Word::Kind::Cat: {
        ordered_json parts = ordered_json::array();
        for (const Word& p : w.parts()) parts.push_back(to_json(p));
        return {{"cat", parts}};
    }
    case Word::Kind::OmegaPow:
        return {{"omega", to_json(w.body())}};
    }
    return nullptr;
}

Word from_json(const ordered_json& j, std::size_t depth)
{
    if (depth > 256) throw WordFormatError("word nesting too deep");
    if (!j.is_object() || j.size() != 1)
        throw WordFormatError("a word must be an object with exactly one of letter, cat, omega");
    const std::string key = j.begin().key();
    const ordered_json& value = j.begin().value();
    if (key == "letter") {
        if (!value.is_array()) throw WordFormatError("\"letter\" must be an array of names");
        Letter l;
        for (const auto& p : value) {
            if (!p.is_string()) throw WordFormatError("proposition names must be strings");
            const std::string name = p.get<std::string>();
            if (!Proposition::valid_name(name))
                throw WordFormatError("invalid proposition name '" + name + "'");
            l.insert(Proposition{name});
        }
        return Word::single(std::move(l));
    }
    if (key == "cat") {
        if (!value.is_array() || value.empty())
            throw WordFormatError("\"cat\" must be a nonempty array of words");
        std::vector<Word> parts;
        for (const auto& p : value) parts.push_back(from_json(p, depth + 1));
        return Word::cat(parts);
    }
    if (key == "omega") return Word::omega(from_json(value, depth + 1));
    throw WordFormatError("unknown word constructor \"" + key + "\"");
}

}  // namespace

std::string word_to_json(const Word& w) { return to_json(w).dump(); }

Word word_from_json(std::string_view text)
{
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw WordFormatError(std::string("malformed JSON: ") + e.what());
    }
    return from_json(j, 0);
}

std::string verdict_to_json(const Verdict& v, bool with_timing)
{
    ordered_json j;
    j["schemaVersion"] = kSchemaVersion;
    j["status"] = to_string(v.status);
    j["bound"] = to_string(v.bound());
    j["level"] = v.level ? ordered_json(*v.level) : ordered_json(nullptr);
    j["witness"] = v.witness ? to_json(*v.witness) : ordered_json(nullptr);
    ordered_json stats;
    stats["stateCount"] = v.stats.state_count;
    stats["factCount"] = v.stats.fact_count;
    if (with_timing) stats["elapsedMillis"] = v.stats.elapsed_millis;
    j["stats"] = stats;
    return j.dump();
}

}  // namespace ordltl
