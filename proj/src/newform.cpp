#include "cycrank/newform.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cycrank {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

bool all_lower(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

std::int64_t parse_positive(const std::string& s, const std::string& whole) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw std::invalid_argument("malformed label: " + whole);
    const std::int64_t v = std::stoll(s);
    if (v < 1) throw std::invalid_argument("malformed label: " + whole);
    return v;
}

}  // namespace

std::int64_t letters_to_index(const std::string& letters) {
    if (!all_lower(letters)) throw std::invalid_argument("bad orbit letters: " + letters);
    std::int64_t v = 0;
    for (char c : letters) v = v * 26 + (c - 'a');
    return v;
}

std::string index_to_letters(std::int64_t index) {
    if (index < 0) throw std::invalid_argument("negative orbit index");
    std::string out;
    do {
        out.insert(out.begin(), static_cast<char>('a' + index % 26));
        index /= 26;
    } while (index > 0);
    return out;
}

std::tuple<std::int64_t, int, std::int64_t, std::int64_t> NewformLabel::sort_key() const {
    return {level, weight, letters_to_index(char_orbit), letters_to_index(hecke_orbit)};
}

std::string NewformLabel::str() const {
    return std::to_string(level) + "." + std::to_string(weight) + "." + char_orbit + "." + hecke_orbit;
}

NewformLabel parse_newform_label(const std::string& label) {
    const auto parts = split(label, '.');
    if (parts.size() != 4 || !all_lower(parts[2]) || !all_lower(parts[3]))
        throw std::invalid_argument("malformed newform label: " + label);
    return {parse_positive(parts[0], label), static_cast<int>(parse_positive(parts[1], label)), parts[2], parts[3]};
}

std::string EmbeddingLabel::str() const {
    return orbit + "." + std::to_string(conrey_index) + "." + std::to_string(index);
}

EmbeddingLabel parse_embedding_label(const std::string& label) {
    const auto parts = split(label, '.');
    if (parts.size() != 6) throw std::invalid_argument("malformed embedding label: " + label);
    const std::string orbit = parts[0] + "." + parts[1] + "." + parts[2] + "." + parts[3];
    parse_newform_label(orbit);
    return {orbit, parse_positive(parts[4], label), static_cast<int>(parse_positive(parts[5], label))};
}

std::optional<int> NewformOrbit::fricke_sign() const {
    if (!atkin_lehner) return std::nullopt;
    int s = 1;
    for (const auto& al : *atkin_lehner) s *= al.sign;
    return s;
}

std::int64_t NewformOrbit::relative_dimension() const {
    if (conrey_indexes.empty() || dimension % static_cast<std::int64_t>(conrey_indexes.size()) != 0)
        throw std::logic_error("orbit " + label + ": dimension is not a multiple of its character orbit size");
    return dimension / static_cast<std::int64_t>(conrey_indexes.size());
}

std::vector<EmbeddingLabel> NewformOrbit::embeddings() const {
    std::vector<EmbeddingLabel> out;
    const std::int64_t rel = relative_dimension();
    for (auto n : conrey_indexes) {
        for (std::int64_t i = 1; i <= rel; ++i) out.push_back({label, n, static_cast<int>(i)});
    }
    return out;
}

EmbeddingLabel NewformOrbit::representative() const {
    if (conrey_indexes.empty()) throw std::logic_error("orbit " + label + " has no characters");
    return {label, conrey_indexes.front(), 1};
}

}  // namespace cycrank
