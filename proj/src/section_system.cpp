#include "syzlab/section_system.hpp"

#include <sstream>

#include <json.hpp>

#include "syzlab/errors.hpp"

namespace syzlab {

std::vector<felt> MuTensor::apply(const Field& F, std::uint32_t i, std::span<const felt> v) const {
    std::vector<felt> out(wq1, 0);
    for (std::uint32_t j = 0; j < wq; ++j) {
        if (!v[j]) continue;
        auto pr = prod(i, j);
        for (std::uint32_t k = 0; k < wq1; ++k)
            if (pr[k]) out[k] = F.add(out[k], F.mul(v[j], pr[k]));
    }
    return out;
}

int SectionSystem::wdim(int q) const {
    if (!has_w(q)) throw WindowTooSmallError("q = " + std::to_string(q) + " outside section-system window");
    return wdims[static_cast<std::size_t>(q - q_min)];
}

const MuTensor& SectionSystem::mu(int q) const {
    if (!has_mu(q)) throw WindowTooSmallError("mu_q for q = " + std::to_string(q) + " outside window");
    return mus[static_cast<std::size_t>(q - q_min)];
}

MuTensor& SectionSystem::mu(int q) {
    if (!has_mu(q)) throw WindowTooSmallError("mu_q for q = " + std::to_string(q) + " outside window");
    return mus[static_cast<std::size_t>(q - q_min)];
}

ValidationReport validate_section_system(const SectionSystem& ss) {
    ValidationReport rep;
    Field F(ss.field);
    if (ss.q_max < ss.q_min) rep.fail("empty q-window");
    if (ss.wdims.size() != static_cast<std::size_t>(ss.q_max - ss.q_min + 1)) rep.fail("wdims size mismatch");
    if (ss.q_max > ss.q_min && ss.mus.size() != static_cast<std::size_t>(ss.q_max - ss.q_min))
        rep.fail("mus size mismatch");
    if (!rep.pass) return rep;

    // dimension ledger: Riemann-Roch in the stable range, zero below degree 0
    for (int q = ss.q_min; q <= ss.q_max; ++q) {
        long long d = ss.deg_B + q * ss.deg_L;
        int w = ss.wdim(q);
        if (w < 0) rep.fail("negative dimension at q=" + std::to_string(q));
        if (d < 0 && w != 0)
            rep.fail("W_" + std::to_string(q) + " should be zero (degree " + std::to_string(d) + ")");
        if (d > 2 * ss.genus - 2 && w != d + 1 - ss.genus)
            rep.fail("W_" + std::to_string(q) + " = " + std::to_string(w) +
                     " violates Riemann-Roch (expected " + std::to_string(d + 1 - ss.genus) + ")");
    }

    for (int q = ss.q_min; q < ss.q_max; ++q) {
        const MuTensor& m = ss.mu(q);
        if (m.n != static_cast<std::uint32_t>(ss.n()) || m.wq != static_cast<std::uint32_t>(ss.wdim(q)) ||
            m.wq1 != static_cast<std::uint32_t>(ss.wdim(q + 1)))
            rep.fail("mu_" + std::to_string(q) + " has inconsistent shape");
    }
    if (!rep.pass) return rep;

    // scalar compatibility: mu_q(v_i, mu_{q-1}(v_i', w)) symmetric in (i, i'),
    // exhaustively over basis triples
    for (int q = ss.q_min + 1; q < ss.q_max; ++q) {
        const MuTensor& lo = ss.mu(q - 1);
        const MuTensor& hi = ss.mu(q);
        for (std::uint32_t i = 0; i < lo.n; ++i) {
            for (std::uint32_t i2 = i + 1; i2 < lo.n; ++i2) {
                for (std::uint32_t j = 0; j < lo.wq; ++j) {
                    std::vector<felt> a = hi.apply(F, i, lo.prod(i2, j));
                    std::vector<felt> b = hi.apply(F, i2, lo.prod(i, j));
                    if (a != b) {
                        std::ostringstream os;
                        os << "mu-commutativity fails at q=" << q << " triple (v" << i << ", v" << i2
                           << ", w" << j << ")";
                        rep.fail(os.str());
                        return rep;
                    }
                }
            }
        }
    }
    return rep;
}

namespace {

nlohmann::json field_to_json(const FieldDesc& d) {
    nlohmann::json j;
    j["characteristic"] = d.characteristic;
    j["extension_degree"] = d.extension_degree;
    j["modulus_poly"] = d.modulus_poly;
    return j;
}

FieldDesc field_from_json(const nlohmann::json& j) {
    FieldDesc d;
    d.characteristic = j.at("characteristic").get<std::uint64_t>();
    d.extension_degree = j.at("extension_degree").get<std::uint32_t>();
    d.modulus_poly = j.value("modulus_poly", std::vector<std::uint64_t>{});
    return d;
}

}  // namespace

std::string SectionSystem::to_json_string() const {
    nlohmann::json j;
    j["schema_version"] = "1";
    j["field"] = field_to_json(field);
    j["genus"] = genus;
    j["deg_L"] = deg_L;
    j["deg_B"] = deg_B;
    j["r"] = r;
    j["q_min"] = q_min;
    j["q_max"] = q_max;
    j["wdims"] = wdims;
    j["curve_id"] = curve_id;
    j["label_B"] = label_B;
    j["label_L"] = label_L;
    nlohmann::json jm = nlohmann::json::array();
    for (std::size_t t = 0; t < mus.size(); ++t) {
        nlohmann::json e;
        e["q"] = q_min + static_cast<int>(t);
        e["n"] = mus[t].n;
        e["wq"] = mus[t].wq;
        e["wq1"] = mus[t].wq1;
        e["entries"] = mus[t].a;
        jm.push_back(std::move(e));
    }
    j["mu"] = std::move(jm);
    return j.dump();
}

SectionSystem SectionSystem::from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SectionSystem ss;
    ss.field = field_from_json(j.at("field"));
    ss.genus = j.at("genus").get<long long>();
    ss.deg_L = j.at("deg_L").get<long long>();
    ss.deg_B = j.at("deg_B").get<long long>();
    ss.r = j.at("r").get<int>();
    ss.q_min = j.at("q_min").get<int>();
    ss.q_max = j.at("q_max").get<int>();
    ss.wdims = j.at("wdims").get<std::vector<int>>();
    ss.curve_id = j.value("curve_id", "");
    ss.label_B = j.value("label_B", "");
    ss.label_L = j.value("label_L", "");
    for (const auto& e : j.at("mu")) {
        MuTensor m(e.at("n").get<std::uint32_t>(), e.at("wq").get<std::uint32_t>(),
                   e.at("wq1").get<std::uint32_t>());
        m.a = e.at("entries").get<std::vector<felt>>();
        if (m.a.size() != static_cast<std::size_t>(m.n) * m.wq * m.wq1)
            throw ConfigError("mu tensor entry count mismatch in JSON");
        ss.mus.push_back(std::move(m));
    }
    return ss;
}

}  // namespace syzlab
