#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace cycrank {

struct AtkinLehnerSign {
    std::int64_t prime;
    int sign;  // +1 or -1
    friend bool operator==(const AtkinLehnerSign&, const AtkinLehnerSign&) = default;
};

/// Base-26 orbit letters: a = 0, ..., z = 25, ba = 26, ...
std::int64_t letters_to_index(const std::string& letters);
std::string index_to_letters(std::int64_t index);

/// Parsed "N.k.c.x" newform orbit label.
struct NewformLabel {
    std::int64_t level;
    int weight;
    std::string char_orbit;  // lower-case letters, "a" is the trivial character
    std::string hecke_orbit;  // lower-case letters

    std::string str() const;
    /// (level, weight, char orbit index, hecke orbit index): database order.
    std::tuple<std::int64_t, int, std::int64_t, std::int64_t> sort_key() const;
};

NewformLabel parse_newform_label(const std::string& label);

/// Parsed "N.k.c.x.n.i": embedding i of the orbit whose coefficients carry the
/// character of Conrey index n.
struct EmbeddingLabel {
    std::string orbit;
    std::int64_t conrey_index;
    int index;

    std::string str() const;
    friend auto operator<=>(const EmbeddingLabel&, const EmbeddingLabel&) = default;
};

EmbeddingLabel parse_embedding_label(const std::string& label);

/// One Galois conjugacy class of weight 2 newforms.
struct NewformOrbit {
    std::string label;
    std::int64_t level = 0;
    int weight = 2;
    std::int64_t char_conductor = 1;
    std::string char_label;  // Conrey label "N.n" of the smallest character in the orbit
    std::int64_t char_order = 1;
    std::vector<std::int64_t> conrey_indexes;  // characters of the embeddings, ascending
    std::int64_t dimension = 0;                // [K_f : Q]
    std::optional<int> analytic_rank;          // order of vanishing per embedding
    std::optional<std::vector<AtkinLehnerSign>> atkin_lehner;
    std::string source;
    std::string retrieved;

    bool trivial_character() const noexcept { return char_order == 1; }
    /// Product of Atkin-Lehner signs (the W_N eigenvalue); needs atkin_lehner.
    std::optional<int> fricke_sign() const;
    /// Embeddings per character in the orbit.
    std::int64_t relative_dimension() const;
    /// All dimension() embedding labels, in canonical order.
    std::vector<EmbeddingLabel> embeddings() const;
    /// The embedding used as orbit representative by the twist engine.
    EmbeddingLabel representative() const;

    friend bool operator==(const NewformOrbit&, const NewformOrbit&) = default;
};

/// Summary of S_2(Gamma_1(N), [chi]) for one Galois orbit of characters.
/// Dimensions are over Q, i.e. summed over the characters of the orbit.
struct NewspaceRecord {
    std::int64_t level = 0;
    std::string char_orbit;  // letters, as in newform labels
    std::int64_t char_index = 1;  // smallest Conrey index in the orbit
    std::int64_t char_conductor = 1;
    std::int64_t char_order = 1;
    std::int64_t cusp_dim = 0;
    std::int64_t new_dim = 0;

    friend bool operator==(const NewspaceRecord&, const NewspaceRecord&) = default;
};

/// (f_chi)^new for one embedding f and one character chi.
struct TwistRecord {
    std::string source;     // embedding label
    std::string character;  // "q.n"
    std::optional<std::string> target;  // embedding label; empty when outside the snapshot
    std::int64_t target_level = 0;

    bool external() const noexcept { return !target.has_value(); }
    friend bool operator==(const TwistRecord&, const TwistRecord&) = default;
};

}  // namespace cycrank
