#include "omega/serialize.hpp"

namespace omega {

Json to_json(const Hyperreal& x)
{
    Json terms = Json::array();
    for (const auto& [e, c] : x.terms())
        terms.push_back({{"exp", e.get_str()}, {"coeff", c.to_string()}});
    return {{"terms", terms},
            {"valid_order", x.valid_order().get_str()},
            {"mode", x.is_exact() ? "exact" : "floating"},
            {"text", to_text(x)}};
}

Json to_json(const OmegaSumResult& r)
{
    return {{"value", to_json(r.value)},
            {"method", to_string(r.method)},
            {"integral_coeff_source", r.integral_coeff_source()},
            {"validity", r.validity().get_str()},
            {"notes", r.notes}};
}

Json to_json(const IntegralVerdict& v)
{
    Json evidence = Json::array();
    for (const Evidence& e : v.evidence)
        evidence.push_back({{"n", e.n}, {"st", e.st}});
    Json out;
    out["verdict"] = to_string(v.kind);
    out["value"] = v.value ? Json(v.value->to_string()) : Json(nullptr);
    out["confidence"] = to_string(v.confidence);
    out["evidence"] = evidence;
    out["tolerance"] = v.tolerance;
    out["notes"] = v.notes;
    return out;
}

Json to_json(const GrowthReport& g)
{
    Json samples = Json::array();
    for (const ProbeSample& s : g.samples) {
        Json j{{"N", s.n}};
        j["sum"] = s.sum ? Json(*s.sum) : Json(nullptr);
        if (!s.error.empty())
            j["error"] = s.error;
        samples.push_back(j);
    }
    Json out{{"samples", samples},
             {"monotone", g.monotone},
             {"sign", g.sign},
             {"model", to_string(g.model)},
             {"log_slope", g.log_slope},
             {"log_r2", g.log_r2},
             {"power_exponent", g.power_exponent}};
    out["limit"] = g.limit ? Json(*g.limit) : Json(nullptr);
    return out;
}

Json to_json(const SplitSumReport& s)
{
    return {{"N", s.n},
            {"B", s.b_index},
            {"exact", s.exact},
            {"left_discrepancy", s.left_discrepancy.to_string()},
            {"right_discrepancy", s.right_discrepancy.to_string()}};
}

Json to_json(const CheckReport& r)
{
    Json witnesses = Json::array();
    for (const Witness& w : r.witnesses)
        witnesses.push_back({{"label", w.label}, {"value", w.value}});
    return {{"claim", r.claim},
            {"status", to_string(r.status)},
            {"expected_violation", r.expected_violation},
            {"witnesses", witnesses},
            {"notes", r.notes}};
}

Json to_json(const AdditivityReport& r)
{
    Json out = to_json(static_cast<const CheckReport&>(r));
    out["left"] = to_json(r.left);
    out["right"] = to_json(r.right);
    out["whole"] = to_json(r.whole);
    out["residual"] = r.residual ? Json(r.residual->to_string()) : Json(nullptr);
    return out;
}

Json to_json(const DirichletReport& r)
{
    Json out = to_json(static_cast<const CheckReport&>(r));
    out["left"] = to_json(r.left);
    out["right"] = to_json(r.right);
    out["whole"] = to_json(r.whole);
    return out;
}

Json to_json(const BoundsReport& r)
{
    Json out = to_json(static_cast<const CheckReport&>(r));
    out["verdict"] = to_json(r.verdict);
    out["margin"] = r.margin;
    return out;
}

Json to_json(const Ftc1Report& r)
{
    Json out = to_json(static_cast<const CheckReport&>(r));
    Json q = Json::array();
    for (const Hyperreal& h : r.quotients)
        q.push_back(to_json(h));
    out["quotients"] = q;
    return out;
}

Json to_json(const L2Report& r)
{
    Json out = to_json(static_cast<const CheckReport&>(r));
    out["gamma"] = to_json(r.gamma);
    out["gamma_class"] = to_string(r.gamma_class);
    return out;
}

Json to_json(const Ftc2Report& r)
{
    Json out = to_json(static_cast<const CheckReport&>(r));
    out["verdict"] = to_json(r.verdict);
    return out;
}

Json to_json(const TelescopeReport& r)
{
    Json out = to_json(static_cast<const CheckReport&>(r));
    out["exact"] = r.exact;
    return out;
}

} // namespace omega
