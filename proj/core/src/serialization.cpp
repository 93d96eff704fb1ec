#include "tlab/serialization.hpp"

#include <charconv>
#include <stdexcept>

#include "json.hpp"

namespace tlab {

using nlohmann::json;

namespace {

json element_json(const NormalForm& a) {
    return json{{"pos", a.pos()}, {"neg", a.neg()}};
}

NormalForm element_of(const json& j) {
    if (!j.is_object() || !j.contains("pos") || !j.contains("neg") || !j["pos"].is_array() ||
        !j["neg"].is_array()) {
        throw std::invalid_argument("element must be an object with integer arrays 'pos' and 'neg'");
    }
    auto indices = [](const json& arr) {
        std::vector<Index> out;
        for (const auto& v : arr) {
            if (!v.is_number_unsigned()) throw std::invalid_argument("element indices must be nonnegative integers");
            out.push_back(v.get<Index>());
        }
        return out;
    };
    return NormalForm::from_parts(indices(j["pos"]), indices(j["neg"]));
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

std::string format_word(std::span<const Atom> word) {
    std::string out;
    for (const auto& a : word) {
        if (!out.empty()) out.push_back(' ');
        out.push_back('x');
        out += std::to_string(a.index);
        if (a.inverse) out += "^-1";
    }
    return out;
}

Word parse_word(std::string_view text) {
    Word w;
    std::size_t i = 0;
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (i < text.size()) {
        if (is_space(text[i])) {
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < text.size() && !is_space(text[end])) ++end;
        std::string_view tok = text.substr(i, end - i);
        i = end;

        if (tok.size() < 2 || tok[0] != 'x') throw std::invalid_argument("bad atom '" + std::string(tok) + "'");
        bool inverse = false;
        std::string_view digits = tok.substr(1);
        if (digits.size() > 3 && digits.substr(digits.size() - 3) == "^-1") {
            inverse = true;
            digits.remove_suffix(3);
        }
        Index idx = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty() ||
            (digits.size() > 1 && digits[0] == '0')) {
            throw std::invalid_argument("bad atom '" + std::string(tok) + "'");
        }
        w.push_back({idx, inverse});
    }
    return w;
}

std::string element_to_json(const NormalForm& a) {
    return element_json(a).dump();
}

NormalForm element_from_json(std::string_view text) {
    return element_of(parse_json(text));
}

std::string instance_to_json(const KeyExchangeInstance& inst, bool include_secrets) {
    json j{{"s", inst.s}, {"L", inst.L}, {"w", element_json(inst.w)}, {"u1", element_json(inst.u1)},
           {"u2", element_json(inst.u2)}};
    if (include_secrets) {
        j["secrets"] = json{{"a1", element_json(inst.a1)},
                            {"b1", element_json(inst.b1)},
                            {"a2", element_json(inst.a2)},
                            {"b2", element_json(inst.b2)}};
        j["K"] = element_json(inst.K);
    }
    return j.dump();
}

KeyExchangeInstance instance_from_json(std::string_view text) {
    const json j = parse_json(text);
    for (const char* field : {"s", "L", "w", "u1", "u2"}) {
        if (!j.contains(field)) throw std::invalid_argument(std::string("instance is missing '") + field + "'");
    }
    KeyExchangeInstance inst;
    inst.s = j["s"].get<int>();
    inst.L = j["L"].get<int>();
    inst.w = element_of(j["w"]);
    inst.u1 = element_of(j["u1"]);
    inst.u2 = element_of(j["u2"]);
    if (j.contains("secrets")) {
        const auto& sec = j["secrets"];
        inst.a1 = element_of(sec.at("a1"));
        inst.b1 = element_of(sec.at("b1"));
        inst.a2 = element_of(sec.at("a2"));
        inst.b2 = element_of(sec.at("b2"));
    }
    if (j.contains("K")) inst.K = element_of(j["K"]);
    return inst;
}

std::string attack_result_to_json(const AttackResult& r, bool include_candidates) {
    json j{{"success", r.success},
           {"kind", to_string(r.kind)},
           {"steps_used", r.steps_used},
           {"elements_scored", r.elements_scored},
           {"runs", r.runs},
           {"candidate_count", r.candidates.size()}};
    if (r.solution) {
        j["solution"] = json{{"a_tilde", element_json(r.solution->first)}, {"b_tilde", element_json(r.solution->second)}};
    } else {
        j["solution"] = nullptr;
    }
    if (include_candidates) {
        json cands = json::array();
        for (const auto& c : r.candidates) cands.push_back(element_json(c));
        j["candidates"] = std::move(cands);
    }
    return j.dump();
}

}  // namespace tlab
