#pragma once

// Dirichlet characters modulo q, stored as exponent vectors on a fixed set of
// generators of (Z/q)^*:
//
//   odd p^e : the least g that is a primitive root mod p and mod p^2
//   4       : -1
//   2^e, e>2: -1 and 5
//
// With these generators the exponent vector of a character is the discrete
// logarithm of its Conrey index, which gives the "q.n" labels used by the
// newform database. Character values are never materialised; phase() returns
// chi(m) as an exact element of Q/Z when a caller needs one.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace cycrank {

struct UnitGenerator {
    std::int64_t prime;
    int prime_exponent;
    std::int64_t generator;  // residue mod modulus, 1 at every other prime
    std::int64_t order;
    std::int64_t component_modulus;  // prime^prime_exponent
};

/// Shared structure of (Z/q)^*; every character mod q points at one of these.
class UnitGroup {
public:
    explicit UnitGroup(std::int64_t modulus);

    std::int64_t modulus() const noexcept { return modulus_; }
    const std::vector<UnitGenerator>& generators() const noexcept { return gens_; }
    std::vector<std::int64_t> generator_orders() const;
    std::int64_t order() const noexcept { return order_; }

    /// Coordinates of a unit m in terms of generators(). Throws if gcd(m, q) != 1.
    std::vector<std::int64_t> log(std::int64_t m) const;
    /// Inverse of log().
    std::int64_t exp(const std::vector<std::int64_t>& coords) const;

private:
    std::int64_t modulus_;
    std::int64_t order_;
    std::vector<UnitGenerator> gens_;
    // Per generator: residue mod component_modulus -> exponent, -1 if not a power.
    std::vector<std::vector<std::int64_t>> dlog_;
};

/// Exact value chi(m) = exp(2 pi i num / den); num in [0, den).
struct Phase {
    std::int64_t num;
    std::int64_t den;
    friend bool operator==(const Phase&, const Phase&) = default;
};

class DirichletCharacter {
public:
    DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<std::int64_t> exponents);

    std::int64_t modulus() const noexcept { return group_->modulus(); }
    const std::vector<std::int64_t>& exponents() const noexcept { return exponents_; }
    std::int64_t conductor() const noexcept { return conductor_; }
    std::int64_t order() const noexcept { return order_; }
    bool is_principal() const noexcept { return order_ == 1; }
    bool is_even() const;

    std::int64_t conrey_index() const;
    /// "q.n"
    std::string label() const;

    /// chi(m); m must be coprime to the modulus.
    Phase phase(std::int64_t m) const;

    DirichletCharacter inverse() const;
    DirichletCharacter power(std::int64_t k) const;

    /// Conjugates chi^k, gcd(k, order) = 1, sorted by Conrey index.
    std::vector<DirichletCharacter> galois_orbit() const;
    /// Smallest Conrey index in the Galois orbit.
    std::int64_t orbit_representative_index() const;

    const std::shared_ptr<const UnitGroup>& group() const noexcept { return group_; }

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
    }

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<std::int64_t> exponents_;
    std::int64_t conductor_ = 1;
    std::int64_t order_ = 1;
};

/// chi * psi; both characters must share a modulus.
DirichletCharacter product(const DirichletCharacter& chi, const DirichletCharacter& psi);

/// chi viewed as a character modulo a multiple of its modulus.
DirichletCharacter induce(const DirichletCharacter& chi, std::int64_t new_modulus);

/// All characters mod q, in lexicographic order of exponent vectors.
class CharacterGroup {
public:
    explicit CharacterGroup(std::int64_t modulus);

    std::int64_t modulus() const noexcept { return group_->modulus(); }
    const std::vector<DirichletCharacter>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    std::vector<std::int64_t> generator_orders() const { return group_->generator_orders(); }
    const std::shared_ptr<const UnitGroup>& unit_group() const noexcept { return group_; }

    const DirichletCharacter& principal() const { return elements_.front(); }
    DirichletCharacter from_conrey(std::int64_t index) const;
    /// Parses "q.n"; q must equal modulus().
    DirichletCharacter from_label(const std::string& label) const;

    /// Galois orbits, each sorted by Conrey index, orbits sorted by representative.
    std::vector<std::vector<DirichletCharacter>> galois_orbits() const;

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<DirichletCharacter> elements_;
};

std::size_t count_by(const CharacterGroup& group, const std::function<bool(const DirichletCharacter&)>& predicate);

/// Splits "q.n" into its integers. Throws std::invalid_argument on bad input.
std::pair<std::int64_t, std::int64_t> parse_character_label(const std::string& label);

}  // namespace cycrank
