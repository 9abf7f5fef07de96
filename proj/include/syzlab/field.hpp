#ifndef SYZLAB_FIELD_HPP
#define SYZLAB_FIELD_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace syzlab {

// A field element, packed into one machine word.  For the prime field the
// value itself; for F_{p^k} the digits of the coefficient vector in base p:
// a_0 + a_1*p + ... + a_{k-1}*p^{k-1}.  The packed value of 0 is 0 and the
// packed value of 1 is 1 in every field, and iterating 0..order-1 walks the
// whole field in a canonical order.
using felt = std::uint64_t;

struct FieldDesc {
    std::uint64_t characteristic = 0;
    std::uint32_t extension_degree = 1;
    // Monic modulus, ascending coefficients, size extension_degree + 1.
    // Empty exactly when extension_degree == 1.
    std::vector<std::uint64_t> modulus_poly;

    bool operator==(const FieldDesc&) const = default;
};

bool is_prime_u64(std::uint64_t n);

class Field {
  public:
    static constexpr std::uint32_t kMaxDegree = 16;

    explicit Field(std::uint64_t p);
    Field(std::uint64_t p, std::uint32_t degree);  // deterministic lowest-lex modulus
    explicit Field(FieldDesc desc);                // validates the descriptor

    const FieldDesc& desc() const { return desc_; }
    std::uint64_t characteristic() const { return p_; }
    std::uint32_t degree() const { return deg_; }
    std::uint64_t order() const { return order_; }
    bool is_prime_field() const { return deg_ == 1; }

    felt zero() const { return 0; }
    felt one() const { return 1; }
    felt from_int(std::int64_t v) const;
    felt generator_x() const { return deg_ > 1 ? p_ : 1; }  // the class of x

    felt add(felt a, felt b) const;
    felt sub(felt a, felt b) const;
    felt neg(felt a) const;
    felt mul(felt a, felt b) const;
    felt inv(felt a) const;
    felt div(felt a, felt b) const { return mul(a, inv(b)); }
    felt pow(felt a, std::uint64_t e) const;
    felt frobenius(felt a) const { return pow(a, p_); }

    bool is_square(felt a) const;
    std::optional<felt> sqrt(felt a) const;  // odd order only

    void unpack(felt a, std::uint64_t* digits) const;  // digits[0..deg-1]
    felt pack(std::span<const std::uint64_t> digits) const;

    // Least k dividing degree() with a^(p^k) == a.
    std::uint32_t residue_degree(felt a) const;

    std::string to_string(felt a) const;

  private:
    void init_tables();

    FieldDesc desc_;
    std::uint64_t p_ = 0;
    std::uint32_t deg_ = 1;
    std::uint64_t order_ = 0;
    std::uint64_t pow_p_[kMaxDegree + 1] = {};
    std::vector<std::uint64_t> mod_;  // modulus coefficients, ascending
};

}  // namespace syzlab

#endif
