#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "supnorm/qexp.hpp"

namespace supnorm {

/// Schema violation in a q-expansion file; `field` names the offender.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, const std::string& what)
        : std::runtime_error("q-expansion file: field '" + field + "': " + what),
          field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

namespace detail {

inline Rat parse_rational(const std::string& s, const std::string& field) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ParseError(field, "not a rational '" + s + "'");
    if (q.get_den() == 0) throw ParseError(field, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace detail

inline QExpansion qexp_from_json(const nlohmann::json& j) {
    auto need = [&](const char* key) -> const nlohmann::json& {
        if (!j.contains(key)) throw ParseError(key, "missing");
        return j.at(key);
    };
    QExpansion f;
    if (!need("weight_num").is_number_integer()) throw ParseError("weight_num", "must be an integer");
    f.weight_num = need("weight_num").get<int>();
    if (f.weight_num < 0) throw ParseError("weight_num", "must be nonnegative");

    if (!need("level").is_number_integer()) throw ParseError("level", "must be an integer");
    f.level = need("level").get<i64>();
    if (f.level < 1) throw ParseError("level", "must be positive");
    if (f.weight_num % 2 == 1 && f.level % 4 != 0)
        throw ParseError("level", "half integral weight requires 4 | level");

    i64 onum = need("offset_num").get<i64>();
    i64 oden = need("offset_den").get<i64>();
    if (oden < 1 || 24 % oden != 0) throw ParseError("offset_den", "must divide 24");
    f.offset = Rat(onum, oden);
    f.offset.canonicalize();
    if (f.offset < 0) throw ParseError("offset_num", "offset must be nonnegative");

    const auto& chi = need("character");
    if (!chi.contains("modulus")) throw ParseError("character.modulus", "missing");
    i64 mod = chi.at("modulus").get<i64>();
    if (mod < 1) throw ParseError("character.modulus", "must be positive");
    std::vector<std::pair<i64, RootOfUnity>> vals;
    if (!chi.contains("values")) throw ParseError("character.values", "missing");
    for (const auto& triple : chi.at("values")) {
        if (!triple.is_array() || triple.size() != 3)
            throw ParseError("character.values", "entries must be [residue, numerator, order]");
        i64 r = triple[0].get<i64>(), num = triple[1].get<i64>(), ord = triple[2].get<i64>();
        if (ord < 1) throw ParseError("character.values", "order must be positive");
        vals.emplace_back(r, RootOfUnity(num, ord));
    }
    try {
        f.character = DirichletCharacter::from_table(mod, vals);
    } catch (const std::invalid_argument& e) {
        throw ParseError("character.values", e.what());
    }
    if (!f.character.validate()) throw ParseError("character.values", "not multiplicative");

    const auto& coeffs = need("coefficients");
    if (!coeffs.is_array()) throw ParseError("coefficients", "must be an array of strings");
    f.coeffs.reserve(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i].is_string())
            throw ParseError("coefficients", "entry " + std::to_string(i) + " must be a string");
        f.coeffs.push_back(detail::parse_rational(coeffs[i].get<std::string>(),
                                                  "coefficients[" + std::to_string(i) + "]"));
    }

    i64 prec = need("precision").get<i64>();
    if (prec != f.precision())
        throw ParseError("precision", "does not match the coefficient count");
    f.validate();
    return f;
}

inline nlohmann::json qexp_to_json(const QExpansion& f) {
    nlohmann::json j;
    j["weight_num"] = f.weight_num;
    j["level"] = f.level;
    j["offset_num"] = f.offset.get_num().get_si();
    j["offset_den"] = f.offset.get_den().get_si();
    nlohmann::json vals = nlohmann::json::array();
    for (i64 r = 0; r < f.character.modulus(); ++r) {
        auto v = f.character.value_exact(r);
        if (v) vals.push_back({r, v->num, v->ord});
    }
    j["character"] = {{"modulus", f.character.modulus()}, {"values", vals}};
    nlohmann::json cs = nlohmann::json::array();
    for (const Rat& c : f.coeffs) cs.push_back(c.get_str());
    j["coefficients"] = cs;
    j["precision"] = f.precision();
    return j;
}

inline QExpansion load_form(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_form: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("(document)", e.what());
    }
    return qexp_from_json(j);
}

inline void save_form(const QExpansion& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_form: cannot open " + path);
    out << qexp_to_json(f).dump(1) << "\n";
}

}  // namespace supnorm
