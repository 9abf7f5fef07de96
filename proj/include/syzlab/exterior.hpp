#ifndef SYZLAB_EXTERIOR_HPP
#define SYZLAB_EXTERIOR_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace syzlab {

// C(n, k) in 64 bits; throws on overflow rather than wrapping.
inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > ~0ull) throw std::overflow_error("binomial overflow");
    }
    return static_cast<std::uint64_t>(r);
}

// Rank/unrank bijection between p-subsets of {0..n-1} and [0, C(n,p)),
// in colexicographic order: rank(S) = sum_i C(s_i, i+1) for s_0 < ... < s_{p-1}.
class ExteriorIndex {
  public:
    ExteriorIndex(unsigned n, unsigned p) : n_(n), p_(p), count_(binom(n, p)) {}

    unsigned n() const { return n_; }
    unsigned p() const { return p_; }
    std::uint64_t count() const { return count_; }

    std::uint64_t rank(std::span<const unsigned> subset) const {
        std::uint64_t r = 0;
        for (unsigned i = 0; i < p_; ++i) r += binom(subset[i], i + 1);
        return r;
    }

    void unrank(std::uint64_t r, unsigned* out) const {
        for (unsigned i = p_; i-- > 0;) {
            // largest s with C(s, i+1) <= r
            unsigned s = i;  // C(i, i+1) = 0
            std::uint64_t c = 0;
            for (unsigned t = i; t < n_; ++t) {
                std::uint64_t ct = binom(t, i + 1);
                if (ct <= r) {
                    s = t;
                    c = ct;
                } else {
                    break;
                }
            }
            out[i] = s;
            r -= c;
        }
    }

    // iterates subsets in colex order without repeated unranking
    static bool next_subset(std::span<unsigned> s, unsigned n) {
        unsigned p = static_cast<unsigned>(s.size());
        for (unsigned i = 0; i < p; ++i) {
            if (i + 1 < p ? s[i] + 1 < s[i + 1] : s[i] + 1 < n) {
                ++s[i];
                for (unsigned j = 0; j < i; ++j) s[j] = j;
                return true;
            }
        }
        return false;
    }

  private:
    unsigned n_, p_;
    std::uint64_t count_;
};

}  // namespace syzlab

#endif
