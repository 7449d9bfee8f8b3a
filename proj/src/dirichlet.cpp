#include "cycrank/dirichlet.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "cycrank/arith.hpp"

namespace cycrank {
namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t out = 1;
    for (int i = 0; i < e; ++i) out = checked_mul(out, b);
    return out;
}

// x = r (mod m) on this component, x = 1 (mod q / m).
std::int64_t crt_lift(std::int64_t r, std::int64_t m, std::int64_t q) {
    const std::int64_t rest = q / m;
    if (rest == 1) return mod(r, m);
    // x = 1 + rest * t, need 1 + rest * t = r mod m
    const std::int64_t inv = [&] {
        // rest is invertible mod m since gcd(rest, m) = 1
        std::int64_t t = 0, newt = 1, rr = m, newr = mod(rest, m);
        while (newr != 0) {
            const std::int64_t qq = rr / newr;
            std::tie(t, newt) = std::make_pair(newt, t - qq * newt);
            std::tie(rr, newr) = std::make_pair(newr, rr - qq * newr);
        }
        return mod(t, m);
    }();
    const std::int64_t t = mulmod<std::int64_t>(mod(r - 1, m), inv, m);
    return mod(1 + checked_mul(rest, t), q);
}

std::int64_t least_primitive_root(std::int64_t p) {
    const std::int64_t p2 = p * p;
    for (std::int64_t g = 2; g < p; ++g) {
        if (multiplicative_order<std::int64_t>(g, p) != p - 1) continue;
        if (multiplicative_order<std::int64_t>(g, p2) == p * (p - 1)) return g;
    }
    throw std::logic_error("no primitive root found");  // unreachable for odd primes
}

std::int64_t exponent_lcm(const std::vector<std::int64_t>& orders) {
    std::int64_t e = 1;
    for (auto o : orders) e = lcm<std::int64_t>(e, o);
    return e;
}

}  // namespace

UnitGroup::UnitGroup(std::int64_t modulus) : modulus_(modulus), order_(0) {
    if (modulus < 1) throw std::invalid_argument("character_group: modulus must be a positive integer");
    order_ = euler_phi(modulus);
    for (const auto& pp : factorize(modulus)) {
        const std::int64_t pe = ipow(pp.prime, pp.exponent);
        if (pp.prime == 2) {
            if (pp.exponent == 1) continue;
            gens_.push_back({2, pp.exponent, crt_lift(pe - 1, pe, modulus), 2, pe});
            std::vector<std::int64_t> table(static_cast<std::size_t>(pe), -1);
            table[static_cast<std::size_t>(1)] = 0;
            table[static_cast<std::size_t>(pe - 1)] = 1;
            dlog_.push_back(std::move(table));
            if (pp.exponent >= 3) {
                const std::int64_t ord = pe / 4;
                gens_.push_back({2, pp.exponent, crt_lift(5, pe, modulus), ord, pe});
                std::vector<std::int64_t> t5(static_cast<std::size_t>(pe), -1);
                std::int64_t x = 1;
                for (std::int64_t k = 0; k < ord; ++k) {
                    t5[static_cast<std::size_t>(x)] = k;
                    x = x * 5 % pe;
                }
                dlog_.push_back(std::move(t5));
            }
        } else {
            const std::int64_t g = least_primitive_root(pp.prime);
            const std::int64_t ord = pe / pp.prime * (pp.prime - 1);
            gens_.push_back({pp.prime, pp.exponent, crt_lift(g, pe, modulus), ord, pe});
            std::vector<std::int64_t> table(static_cast<std::size_t>(pe), -1);
            std::int64_t x = 1;
            for (std::int64_t k = 0; k < ord; ++k) {
                table[static_cast<std::size_t>(x)] = k;
                x = x * g % pe;
            }
            dlog_.push_back(std::move(table));
        }
    }
}

std::vector<std::int64_t> UnitGroup::generator_orders() const {
    std::vector<std::int64_t> out;
    for (const auto& g : gens_) out.push_back(g.order);
    return out;
}

std::vector<std::int64_t> UnitGroup::log(std::int64_t m) const {
    m = mod(m, modulus_);
    if (gcd<std::int64_t>(m, modulus_) != 1) throw std::invalid_argument("log: residue is not a unit");
    std::vector<std::int64_t> out(gens_.size(), 0);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto& g = gens_[i];
        std::int64_t r = m % g.component_modulus;
        if (g.prime == 2) {
            // -1 part, then the 5 part of the sign-corrected residue
            const bool negative = r % 4 == 3;
            out[i] = negative ? 1 : 0;
            if (g.prime_exponent >= 3) {
                if (negative) r = g.component_modulus - r;
                out[i + 1] = dlog_[i + 1][static_cast<std::size_t>(r)];
                ++i;
            }
        } else {
            out[i] = dlog_[i][static_cast<std::size_t>(r)];
        }
    }
    return out;
}

std::int64_t UnitGroup::exp(const std::vector<std::int64_t>& coords) const {
    if (coords.size() != gens_.size()) throw std::invalid_argument("exp: coordinate count does not match generators");
    if (modulus_ == 1) return 1;
    std::int64_t x = 1;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        x = mulmod<std::int64_t>(x, powmod<std::int64_t>(gens_[i].generator, mod(coords[i], gens_[i].order), modulus_),
                                 modulus_);
    }
    return x;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<std::int64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
    const auto& gens = group_->generators();
    if (exponents_.size() != gens.size()) throw std::invalid_argument("character: exponent count does not match generators");
    conductor_ = 1;
    order_ = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto& g = gens[i];
        exponents_[i] = mod(exponents_[i], g.order);
        const std::int64_t k = exponents_[i];
        const std::int64_t comp_order = g.order / gcd<std::int64_t>(k, g.order);
        order_ = lcm<std::int64_t>(order_, comp_order);
        if (g.prime == 2) {
            std::int64_t c = k == 0 ? 1 : 4;
            if (g.prime_exponent >= 3) {
                const std::int64_t b = mod(exponents_[i + 1], gens[i + 1].order);
                exponents_[i + 1] = b;
                const std::int64_t ord5 = gens[i + 1].order / gcd<std::int64_t>(b, gens[i + 1].order);
                order_ = lcm<std::int64_t>(order_, ord5);
                if (b != 0) c = 4 * ord5;
                ++i;
            }
            conductor_ *= c;
        } else if (k != 0) {
            conductor_ *= ipow(g.prime, 1 + valuation<std::int64_t>(comp_order, g.prime));
        }
    }
}

bool DirichletCharacter::is_even() const { return phase(-1).num == 0; }

std::int64_t DirichletCharacter::conrey_index() const { return group_->exp(exponents_); }

std::string DirichletCharacter::label() const {
    return std::to_string(modulus()) + "." + std::to_string(conrey_index());
}

Phase DirichletCharacter::phase(std::int64_t m) const {
    const auto coords = group_->log(m);
    const auto orders = group_->generator_orders();
    const std::int64_t den = exponent_lcm(orders);
    std::int64_t num = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const std::int64_t term = mulmod<std::int64_t>(mulmod<std::int64_t>(exponents_[i], coords[i], den), den / orders[i], den);
        num = (num + term) % den;
    }
    const std::int64_t g = gcd<std::int64_t>(num, den);
    return {num / g, den / g};
}

DirichletCharacter DirichletCharacter::inverse() const { return power(-1); }

DirichletCharacter DirichletCharacter::power(std::int64_t k) const {
    std::vector<std::int64_t> e(exponents_.size());
    const auto& gens = group_->generators();
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = mulmod<std::int64_t>(exponents_[i], mod(k, gens[i].order), gens[i].order);
    return DirichletCharacter(group_, std::move(e));
}

std::vector<DirichletCharacter> DirichletCharacter::galois_orbit() const {
    std::vector<DirichletCharacter> out;
    std::set<std::int64_t> seen;
    for (std::int64_t k = 1; k <= order_; ++k) {
        if (gcd<std::int64_t>(k, order_) != 1) continue;
        DirichletCharacter c = power(k);
        if (seen.insert(c.conrey_index()).second) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(),
              [](const DirichletCharacter& a, const DirichletCharacter& b) { return a.conrey_index() < b.conrey_index(); });
    return out;
}

std::int64_t DirichletCharacter::orbit_representative_index() const {
    return galois_orbit().front().conrey_index();
}

DirichletCharacter product(const DirichletCharacter& chi, const DirichletCharacter& psi) {
    if (chi.modulus() != psi.modulus()) throw std::logic_error("product: characters have different moduli");
    std::vector<std::int64_t> e(chi.exponents().size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = chi.exponents()[i] + psi.exponents()[i];
    return DirichletCharacter(chi.group(), std::move(e));
}

DirichletCharacter induce(const DirichletCharacter& chi, std::int64_t new_modulus) {
    if (new_modulus < 1 || new_modulus % chi.modulus() != 0)
        throw std::invalid_argument("induce: new modulus must be a multiple of the old one");
    auto group = std::make_shared<const UnitGroup>(new_modulus);
    std::vector<std::int64_t> e;
    for (const auto& g : group->generators()) {
        const Phase ph = chi.phase(g.generator % chi.modulus());
        e.push_back(ph.num * (g.order / ph.den));
    }
    return DirichletCharacter(std::move(group), std::move(e));
}

CharacterGroup::CharacterGroup(std::int64_t modulus) : group_(std::make_shared<const UnitGroup>(modulus)) {
    const auto orders = group_->generator_orders();
    std::vector<std::int64_t> e(orders.size(), 0);
    elements_.reserve(static_cast<std::size_t>(group_->order()));
    while (true) {
        elements_.emplace_back(group_, e);
        // odometer, last generator fastest
        std::size_t i = e.size();
        while (i > 0) {
            --i;
            if (++e[i] < orders[i]) break;
            e[i] = 0;
            if (i == 0) return;
        }
        if (e.empty()) return;
    }
}

DirichletCharacter CharacterGroup::from_conrey(std::int64_t index) const {
    if (index < 1 || gcd<std::int64_t>(index, modulus()) != 1)
        throw std::invalid_argument("from_conrey: index must be a positive unit mod q");
    return DirichletCharacter(group_, group_->log(index));
}

DirichletCharacter CharacterGroup::from_label(const std::string& label) const {
    const auto [q, n] = parse_character_label(label);
    if (q != modulus()) throw std::invalid_argument("from_label: modulus mismatch in " + label);
    return from_conrey(n);
}

std::vector<std::vector<DirichletCharacter>> CharacterGroup::galois_orbits() const {
    std::vector<std::vector<DirichletCharacter>> out;
    std::set<std::int64_t> seen;
    for (const auto& chi : elements_) {
        if (seen.count(chi.conrey_index())) continue;
        auto orbit = chi.galois_orbit();
        for (const auto& c : orbit) seen.insert(c.conrey_index());
        out.push_back(std::move(orbit));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front().conrey_index() < b.front().conrey_index(); });
    return out;
}

std::size_t count_by(const CharacterGroup& group, const std::function<bool(const DirichletCharacter&)>& predicate) {
    return static_cast<std::size_t>(std::count_if(group.elements().begin(), group.elements().end(), predicate));
}

std::pair<std::int64_t, std::int64_t> parse_character_label(const std::string& label) {
    const auto dot = label.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == label.size())
        throw std::invalid_argument("bad character label: " + label);
    std::size_t used = 0;
    try {
        const std::int64_t q = std::stoll(label.substr(0, dot), &used);
        if (used != dot) throw std::invalid_argument("trailing characters");
        const std::string tail = label.substr(dot + 1);
        const std::int64_t n = std::stoll(tail, &used);
        if (used != tail.size()) throw std::invalid_argument("trailing characters");
        if (q < 1 || n < 1) throw std::invalid_argument("non-positive");
        return {q, n};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad character label: " + label);
    }
}

}  // namespace cycrank
