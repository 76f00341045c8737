#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pcf/analysis.hpp"
#include "pcf/mjp.hpp"

namespace pcf {

using json = nlohmann::ordered_json;

// Rationals print as "num/den", integers as plain "num".
inline std::string rational_str(const rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline rational parse_rational(const std::string& s) {
    rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw cf_error(error_code::bad_input, "cannot parse rational: " + s);
    q.canonicalize();
    return q;
}

// Values at the CLI boundary: "a/b" or "quad:P,Q,D".
inline qp_number parse_value(const std::string& s) {
    if (s.rfind("quad:", 0) == 0) {
        std::string rest = s.substr(5);
        size_t c1 = rest.find(',');
        size_t c2 = rest.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw cf_error(error_code::bad_input, "quad value needs quad:P,Q,D");
        rational P = parse_rational(rest.substr(0, c1));
        rational Q = parse_rational(rest.substr(c1 + 1, c2 - c1 - 1));
        rational Dq = parse_rational(rest.substr(c2 + 1));
        if (Dq.get_den() != 1)
            throw cf_error(error_code::bad_input, "D must be an integer");
        return qp_number::quadratic(P, Q, Dq.get_num());
    }
    return qp_number(parse_rational(s));
}

namespace detail {

inline json rational_pair(const rational& q) {
    return json::array({q.get_num().get_str(), q.get_den().get_str()});
}

inline rational pair_to_rational(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw cf_error(error_code::bad_input, "expected a [num, den] pair");
    return make_rational(integer(j[0].get<std::string>()), integer(j[1].get<std::string>()));
}

inline json status_to_json(const expansion_status& st) {
    json j;
    switch (st.k) {
        case expansion_status::kind::finite: j["kind"] = "finite"; break;
        case expansion_status::kind::periodic:
            j["kind"] = "periodic";
            j["pre_period"] = st.pre_period;
            j["period"] = st.period;
            break;
        case expansion_status::kind::truncated:
            j["kind"] = "truncated";
            j["steps"] = st.steps;
            break;
    }
    return j;
}

inline expansion_status status_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "finite") return expansion_status::finite();
    if (kind == "periodic")
        return expansion_status::periodic(j.at("pre_period").get<long>(), j.at("period").get<long>());
    if (kind == "truncated") return expansion_status::truncated(j.at("steps").get<long>());
    throw cf_error(error_code::bad_input, "unknown status kind: " + kind);
}

}  // namespace detail

inline json to_json(const expansion& e) {
    json j;
    j["p"] = e.ctx.p;
    j["convention"] = e.ctx.balanced() ? "balanced" : "standard";
    j["algorithm"] = e.algorithm;
    json qs = json::array();
    for (const auto& q : e.quotients) qs.push_back(detail::rational_pair(q));
    j["quotients"] = qs;
    json ns = json::array();
    for (const auto& b : e.numerators) ns.push_back(detail::rational_pair(b));
    j["numerators"] = ns;
    j["status"] = detail::status_to_json(e.status);
    return j;
}

inline expansion expansion_from_json(const json& j) {
    convention conv = j.at("convention").get<std::string>() == "balanced" ? convention::balanced
                                                                          : convention::standard;
    padic_context ctx(j.at("p").get<long>(), conv);
    expansion e(ctx);
    e.algorithm = j.at("algorithm").get<std::string>();
    for (const auto& q : j.at("quotients")) e.quotients.push_back(detail::pair_to_rational(q));
    for (const auto& b : j.at("numerators")) e.numerators.push_back(detail::pair_to_rational(b));
    e.status = detail::status_from_json(j.at("status"));
    return e;
}

// Text form: "[a0, a1, a2]" when finite, "[a0, a1 | q0, q1]" with the period
// after the bar, "[a0, a1, ...]" when truncated.
inline std::string to_text(const expansion& e) {
    std::string s = "[";
    for (long i = 0; i < e.stored_count(); ++i) {
        if (i > 0) s += e.status.is_periodic() && i == e.status.pre_period ? " | " : ", ";
        if (e.status.is_periodic() && e.status.pre_period == 0 && i == 0) {}
        s += rational_str(e.quotients[static_cast<size_t>(i)]);
    }
    if (e.status.is_periodic() && e.status.pre_period == 0 && e.stored_count() > 0)
        s = "[ | " + s.substr(1);
    if (e.status.is_truncated()) s += ", ...";
    s += "]";
    return s;
}

inline json to_json(const classification& c) {
    json j;
    j["verdict"] = verdict_name(c.v);
    if (c.v == classification::verdict::periodic) {
        j["pre_period"] = c.pre_period;
        j["period"] = c.period;
    }
    if (c.cert) j["certificate"] = certificate_name(*c.cert);
    j["steps_used"] = c.steps_used;
    return j;
}

inline classification classification_from_json(const json& j) {
    classification c;
    std::string v = j.at("verdict").get<std::string>();
    if (v == "Finite") c.v = classification::verdict::finite;
    else if (v == "Periodic") c.v = classification::verdict::periodic;
    else if (v == "NotPeriodic") c.v = classification::verdict::not_periodic;
    else if (v == "Undetermined") c.v = classification::verdict::undetermined;
    else throw cf_error(error_code::bad_input, "unknown verdict: " + v);
    if (j.contains("pre_period")) c.pre_period = j.at("pre_period").get<long>();
    if (j.contains("period")) c.period = j.at("period").get<long>();
    if (j.contains("certificate")) {
        std::string cert = j.at("certificate").get<std::string>();
        if (cert == "OotoSign") c.cert = certificate::ooto_sign;
        else if (cert == "DeWegerSign") c.cert = certificate::de_weger_sign;
        else if (cert == "TwoNegativeEmbeddings") c.cert = certificate::two_negative_embeddings;
        else if (cert == "LaoTail") c.cert = certificate::lao_tail;
        else throw cf_error(error_code::bad_input, "unknown certificate: " + cert);
    }
    c.steps_used = j.at("steps_used").get<long>();
    return c;
}

// Jacobi-Perron rows as [[num,den], ...] per step.
inline json to_json(const mjp_expansion& e) {
    json j;
    j["p"] = e.ctx.p;
    j["m"] = e.m;
    json rows = json::array();
    for (const auto& row : e.rows) {
        json r = json::array();
        for (const auto& a : row) r.push_back(detail::rational_pair(a));
        rows.push_back(r);
    }
    j["rows"] = rows;
    j["status"] = detail::status_to_json(e.status);
    return j;
}

}  // namespace pcf
