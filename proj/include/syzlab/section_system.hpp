#ifndef SYZLAB_SECTION_SYSTEM_HPP
#define SYZLAB_SECTION_SYSTEM_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "syzlab/field.hpp"

namespace syzlab {

// Structure tensor of H0(L) x H0(B+qL) -> H0(B+(q+1)L) in fixed bases.
struct MuTensor {
    std::uint32_t n = 0;    // dim H0(L)
    std::uint32_t wq = 0;   // dim H0(B+qL)
    std::uint32_t wq1 = 0;  // dim H0(B+(q+1)L)
    std::vector<felt> a;    // [i][j][k] row-major

    MuTensor() = default;
    MuTensor(std::uint32_t n_, std::uint32_t wq_, std::uint32_t wq1_)
        : n(n_), wq(wq_), wq1(wq1_), a(static_cast<std::size_t>(n_) * wq_ * wq1_, 0) {}

    felt& at(std::uint32_t i, std::uint32_t j, std::uint32_t k) {
        return a[(static_cast<std::size_t>(i) * wq + j) * wq1 + k];
    }
    felt at(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
        return a[(static_cast<std::size_t>(i) * wq + j) * wq1 + k];
    }
    std::span<const felt> prod(std::uint32_t i, std::uint32_t j) const {
        return {a.data() + (static_cast<std::size_t>(i) * wq + j) * wq1, wq1};
    }
    // image of a coordinate vector under multiplication by basis vector i
    std::vector<felt> apply(const Field& F, std::uint32_t i, std::span<const felt> v) const;
};

// Everything the Koszul engine consumes: the dimension ledger of the graded
// pieces H0(B+qL) over a q-window plus the multiplication tensors, with the
// numeric metadata needed for sanity checks.
struct SectionSystem {
    FieldDesc field;
    long long genus = 0;
    long long deg_L = 0;
    long long deg_B = 0;
    int r = 0;  // h0(L) - 1
    int q_min = 0, q_max = 0;
    std::vector<int> wdims;        // index q - q_min
    std::vector<MuTensor> mus;     // index q - q_min, for q in [q_min, q_max-1]
    std::string curve_id, label_B, label_L;
    std::vector<std::string> warnings;  // build-time caveats, not serialized

    int n() const { return r + 1; }
    bool has_w(int q) const { return q >= q_min && q <= q_max; }
    bool has_mu(int q) const { return q >= q_min && q < q_max; }
    int wdim(int q) const;
    const MuTensor& mu(int q) const;
    MuTensor& mu(int q);

    std::string to_json_string() const;
    static SectionSystem from_json_string(const std::string& text);
};

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> issues;
    void fail(std::string what) {
        pass = false;
        issues.push_back(std::move(what));
    }
};

// Checks the dimension ledger against Riemann-Roch in the stable range, the
// tensor shapes, and mu-commutativity exhaustively over basis triples.
ValidationReport validate_section_system(const SectionSystem& ss);

}  // namespace syzlab

#endif
