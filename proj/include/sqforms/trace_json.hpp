#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sqforms/descent.hpp"
#include "sqforms/errors.hpp"

// Trace documents: every integer is a decimal string (optional leading
// minus) so that consumers without big-integer support cannot silently
// lose precision. Unknown fields are rejected and the schema version is
// checked on parse; parsing checks structure only, verify_trace checks
// the mathematics.

namespace sqforms {

inline constexpr const char* kTraceSchemaVersion = "1";

namespace detail {

inline std::string int_to_dec(const Int& v) { return v.str(); }

inline bool valid_decimal(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && s[i] == '-') ++i;
    if (i >= s.size()) return false;
    if (s[i] == '0') return i + 1 == s.size() && s[0] != '-';  // "0" only, no "-0"
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

inline Int dec_to_int(const nlohmann::json& j, const char* field) {
    if (!j.is_string())
        throw parse_error(std::string("trace: field '") + field + "' must be a decimal string");
    const std::string s = j.get<std::string>();
    if (!valid_decimal(s))
        throw parse_error(std::string("trace: field '") + field + "' is not a canonical decimal");
    return Int(s);
}

inline nlohmann::json ints_to_json(const std::vector<Int>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Int& x : v) arr.push_back(int_to_dec(x));
    return arr;
}

inline std::vector<Int> json_to_ints(const nlohmann::json& j, const char* field) {
    if (!j.is_array())
        throw parse_error(std::string("trace: field '") + field + "' must be an array");
    std::vector<Int> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(dec_to_int(e, field));
    return out;
}

inline void require_keys(const nlohmann::json& obj, std::initializer_list<const char*> keys,
                         const char* what) {
    if (!obj.is_object())
        throw parse_error(std::string("trace: ") + what + " must be an object");
    for (const char* k : keys)
        if (!obj.contains(k))
            throw parse_error(std::string("trace: ") + what + " is missing field '" + k + "'");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : keys)
            if (item.key() == k) { known = true; break; }
        if (!known)
            throw parse_error(std::string("trace: ") + what + " has unknown field '" +
                              item.key() + "'");
    }
}

inline StepKind step_kind_from_string(const std::string& s) {
    if (s == "standard") return StepKind::standard;
    if (s == "halve") return StepKind::halve;
    if (s == "quarter") return StepKind::quarter;
    if (s == "gcd_reduce") return StepKind::gcd_reduce;
    throw parse_error("trace: unknown step kind '" + s + "'");
}

} // namespace detail

inline nlohmann::json serialize_trace(const DescentTrace& t) {
    nlohmann::json doc;
    doc["schema_version"] = kTraceSchemaVersion;
    doc["form"] = std::to_string(t.form.tag());
    doc["N"] = detail::int_to_dec(t.N);
    doc["seed"] = {
        {"N", detail::int_to_dec(t.seed.N)},
        {"roots", detail::ints_to_json(t.seed.roots)},
        {"n", detail::int_to_dec(t.seed.n)},
    };
    nlohmann::json steps = nlohmann::json::array();
    for (const DescentStep& st : t.steps) {
        steps.push_back({
            {"kind", to_string(st.kind)},
            {"n", detail::int_to_dec(st.n)},
            {"roots_in", detail::ints_to_json(st.roots_in)},
            {"residues", detail::ints_to_json(st.residues)},
            {"quotients", detail::ints_to_json(st.quotients)},
            {"composed", detail::ints_to_json(st.composed)},
            {"n_next", detail::int_to_dec(st.n_next)},
            {"roots_out", detail::ints_to_json(st.roots_out)},
        });
    }
    doc["steps"] = std::move(steps);
    doc["result"] = detail::ints_to_json(t.result);
    return doc;
}

inline DescentTrace parse_trace(const nlohmann::json& doc) {
    detail::require_keys(doc, {"schema_version", "form", "N", "seed", "steps", "result"},
                         "document");
    if (!doc["schema_version"].is_string() ||
        doc["schema_version"].get<std::string>() != kTraceSchemaVersion)
        throw parse_error("trace: unsupported schema_version");
    if (!doc["form"].is_string())
        throw parse_error("trace: field 'form' must be a string");
    const std::string form_s = doc["form"].get<std::string>();
    if (form_s.size() != 1 || form_s[0] < '1' || form_s[0] > '4')
        throw parse_error("trace: field 'form' must be '1', '2', '3' or '4'");
    DescentTrace t;
    t.form = TargetForm::from_tag(form_s[0] - '0');
    t.N = detail::dec_to_int(doc["N"], "N");
    detail::require_keys(doc["seed"], {"N", "roots", "n"}, "seed");
    t.seed.form = t.form;
    t.seed.N = detail::dec_to_int(doc["seed"]["N"], "seed.N");
    t.seed.roots = detail::json_to_ints(doc["seed"]["roots"], "seed.roots");
    t.seed.n = detail::dec_to_int(doc["seed"]["n"], "seed.n");
    if (t.seed.roots.size() != t.form.arity())
        throw parse_error("trace: seed.roots has the wrong arity for the form");
    if (!doc["steps"].is_array())
        throw parse_error("trace: field 'steps' must be an array");
    for (const auto& js : doc["steps"]) {
        detail::require_keys(js, {"kind", "n", "roots_in", "residues", "quotients",
                                  "composed", "n_next", "roots_out"}, "step");
        if (!js["kind"].is_string())
            throw parse_error("trace: step field 'kind' must be a string");
        DescentStep st;
        st.kind = detail::step_kind_from_string(js["kind"].get<std::string>());
        st.n = detail::dec_to_int(js["n"], "step.n");
        st.roots_in = detail::json_to_ints(js["roots_in"], "step.roots_in");
        st.residues = detail::json_to_ints(js["residues"], "step.residues");
        st.quotients = detail::json_to_ints(js["quotients"], "step.quotients");
        st.composed = detail::json_to_ints(js["composed"], "step.composed");
        st.n_next = detail::dec_to_int(js["n_next"], "step.n_next");
        st.roots_out = detail::json_to_ints(js["roots_out"], "step.roots_out");
        t.steps.push_back(std::move(st));
    }
    t.result = detail::json_to_ints(doc["result"], "result");
    if (t.result.size() != t.form.arity())
        throw parse_error("trace: result has the wrong arity for the form");
    return t;
}

// Newline-terminated compact JSON, byte-stable across runs.
inline std::string trace_to_string(const DescentTrace& t) {
    return serialize_trace(t).dump() + "\n";
}

inline DescentTrace trace_from_string(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw parse_error("trace: document is not valid JSON");
    return parse_trace(doc);
}

} // namespace sqforms
