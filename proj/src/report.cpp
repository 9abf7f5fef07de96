#include "syzlab/report.hpp"

#include <sstream>

#include "syzlab/errors.hpp"

namespace syzlab {

nlohmann::json point_to_json(const CurvePoint& pt) {
    nlohmann::json j;
    j["at_infinity"] = pt.at_infinity;
    j["x"] = pt.x;
    j["y"] = pt.y;
    j["z"] = pt.z;
    j["field_degree"] = pt.field_degree;
    j["residue_degree"] = pt.residue_degree;
    return j;
}

nlohmann::json divisor_to_json(const EffectiveDivisor& xi) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [pt, m] : xi.points) {
        nlohmann::json e = point_to_json(pt);
        e["multiplicity"] = m;
        arr.push_back(std::move(e));
    }
    return nlohmann::json{{"degree", xi.degree()}, {"points", arr}};
}

nlohmann::json to_json(const BettiTable& t) {
    nlohmann::json j;
    j["curve"] = t.curve_id;
    j["B"] = t.label_B;
    j["L"] = t.label_L;
    j["prime"] = t.field.characteristic;
    j["p_range"] = {t.p_min, t.p_max};
    j["q_range"] = {t.q_min, t.q_max};
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : t.entries)
        entries.push_back({{"p", e.p}, {"q", e.q}, {"dim", e.dim}, {"provenance", provenance_name(e.prov)}});
    j["entries"] = std::move(entries);
    j["text"] = t.to_text();
    return j;
}

nlohmann::json to_json(const GonalityReport& r) {
    nlohmann::json j;
    j["curve"] = r.curve_id;
    j["L"] = r.label_L;
    j["deg_L"] = r.deg_L;
    j["p_max"] = r.p_max;
    j["first_nonzero_p"] = r.first_nonzero_p;
    j["gonality_estimate"] = r.gonality_estimate;
    j["bound_ok"] = r.bound_ok;
    j["bound_used"] = r.bound_used;
    nlohmann::json scan = nlohmann::json::array();
    for (const auto& [p, k] : r.scan) scan.push_back({{"p", p}, {"dim_K_p1", k}});
    j["scan"] = std::move(scan);
    return j;
}

nlohmann::json to_json(const PvaReport& r) {
    nlohmann::json j;
    j["B"] = r.label_B;
    j["p"] = r.p;
    j["N"] = r.N;
    j["exhaustive"] = r.exhaustive;
    j["p_very_ample"] = r.p_very_ample;
    j["n_points"] = r.n_points;
    j["n_divisors_checked"] = r.n_divisors;
    if (r.witness) {
        j["witness"] = divisor_to_json(*r.witness);
        j["witness_rank"] = r.witness_rank;
    }
    return j;
}

nlohmann::json to_json(const TheoremBReport& r) {
    nlohmann::json j;
    const char* status = r.status == TheoremBReport::Status::Pass        ? "PASS"
                         : r.status == TheoremBReport::Status::Fail      ? "FAIL"
                                                                         : "BOUND_NOT_MET";
    j["status"] = status;
    j["pva"] = to_json(r.pva);
    j["dim_K_p1"] = r.k_p1;
    j["bound"] = r.bound;
    j["deg_L"] = r.deg_L;
    j["bound_met"] = r.bound_met;
    return j;
}

nlohmann::json to_json(const GrowthReport& r) {
    nlohmann::json j;
    j["status"] = r.status == GrowthReport::Status::Fitted ? "FITTED" : "NOT_POLYNOMIAL";
    j["p"] = r.p;
    j["q"] = r.q;
    j["B"] = r.label_B;
    j["A"] = r.label_A;
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& [d, v] : r.samples) samples.push_back({{"d", d}, {"dim", v}});
    j["samples"] = std::move(samples);
    j["fitted_degree"] = r.fitted_degree;
    j["newton_coeffs"] = r.newton_coeffs;
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : r.coeffs) coeffs.push_back({{"num", c.num}, {"den", c.den}});
    j["coeffs"] = std::move(coeffs);
    if (r.expected_degree) j["expected_degree"] = *r.expected_degree;
    j["pass"] = r.pass;
    return j;
}

nlohmann::json to_json(const DualityReport& r) {
    nlohmann::json j;
    j["pass"] = r.pass;
    j["r"] = r.r;
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : r.pairs)
        pairs.push_back({{"p", p.p}, {"q", p.q}, {"lhs", p.lhs}, {"rhs", p.rhs}});
    j["pairs"] = std::move(pairs);
    return j;
}

namespace {

std::string render_text(const nlohmann::json& rep) {
    std::ostringstream os;
    const std::string kind = rep.value("kind", "");
    os << "kind: " << kind << "\n";
    if (rep.contains("prime")) os << "prime: " << rep["prime"] << "\n";
    if (rep.contains("pass") && !rep["pass"].is_null())
        os << "verdict: " << (rep["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    const nlohmann::json& res = rep.contains("result") ? rep["result"] : rep;
    if (res.contains("text")) {
        os << res["text"].get<std::string>();
    } else if (kind == "gonality") {
        os << "gonality estimate: " << res["gonality_estimate"] << " (first nonzero p = "
           << res["first_nonzero_p"] << ", bound_ok = " << res["bound_ok"] << ")\n";
        for (const auto& e : res["scan"])
            os << "  dim K_{" << e["p"] << ",1}(C,K;L) = " << e["dim_K_p1"] << "\n";
    } else if (kind == "growth") {
        os << "fitted degree: " << res["fitted_degree"] << "\n";
        for (const auto& e : res["samples"]) os << "  d = " << e["d"] << ": " << e["dim"] << "\n";
    } else if (kind == "duality") {
        for (const auto& e : res["pairs"])
            os << "  (" << e["p"] << "," << e["q"] << "): " << e["lhs"] << " vs " << e["rhs"] << "\n";
    } else {
        os << res.dump(2) << "\n";
    }
    return os.str();
}

std::string render_csv(const nlohmann::json& rep) {
    std::ostringstream os;
    const std::string kind = rep.value("kind", "");
    const nlohmann::json& res = rep.contains("result") ? rep["result"] : rep;
    if (kind == "betti") {
        os << "p,q,dim,provenance\n";
        for (const auto& e : res["entries"])
            os << e["p"] << ',' << e["q"] << ',' << e["dim"] << ','
               << e["provenance"].get<std::string>() << "\n";
    } else if (kind == "growth") {
        os << "d,dim\n";
        for (const auto& e : res["samples"]) os << e["d"] << ',' << e["dim"] << "\n";
        os << "# fitted_degree," << res["fitted_degree"] << "\n";
        os << "# coeffs";
        for (const auto& c : res["coeffs"]) os << ',' << c["num"] << '/' << c["den"];
        os << "\n";
    } else if (kind == "duality") {
        os << "p,q,lhs,rhs\n";
        for (const auto& e : res["pairs"])
            os << e["p"] << ',' << e["q"] << ',' << e["lhs"] << ',' << e["rhs"] << "\n";
    } else if (kind == "gonality") {
        os << "p,dim\n";
        for (const auto& e : res["scan"]) os << e["p"] << ',' << e["dim_K_p1"] << "\n";
    } else {
        // flat key,value dump for scalar reports
        os << "key,value\n";
        for (auto it = res.begin(); it != res.end(); ++it)
            if (!it.value().is_structured()) os << it.key() << ',' << it.value().dump() << "\n";
    }
    return os.str();
}

}  // namespace

std::string emit_report(const nlohmann::json& report, const std::string& format) {
    if (format == "json") return report.dump(2) + "\n";
    if (format == "text") return render_text(report);
    if (format == "csv") return render_csv(report);
    throw ConfigError("unknown output format: " + format);
}

}  // namespace syzlab
