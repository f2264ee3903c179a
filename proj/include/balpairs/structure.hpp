#pragma once

#include <array>
#include <optional>
#include <vector>

#include "balpairs/poset.hpp"

namespace balpairs {

// Induced fence f_0 .. f_n: f_i and f_j comparable iff |i - j| <= 1.
// `starts_low` says whether f_0 is a minimal element of the fence; for a
// single element it is the orientation the caller chose.
struct FenceWitness {
  std::vector<ElementId> elements;
  bool starts_low = true;

  std::size_t length() const { return elements.empty() ? 0 : elements.size() - 1; }
  bool is_low(std::size_t i) const { return starts_low == (i % 2 == 0); }
  ElementId front() const { return elements.front(); }
  ElementId back() const { return elements.back(); }
  ElementId operator[](std::size_t i) const { return elements[i]; }
  FenceWitness reversed() const;

  bool operator==(const FenceWitness&) const = default;
};

// c_1 .. c_2n with odd-indexed (1-based) elements maximal; c_1 ~ c_2n.
struct CrownWitness {
  std::vector<ElementId> elements;
  std::size_t half_length() const { return elements.size() / 2; }
};

// bottom < left, right < top, left and right incomparable.
struct DiamondWitness {
  ElementId bottom = 0, left = 0, right = 0, top = 0;
};

bool is_fence(const Poset& p, const FenceWitness& f);

std::optional<CrownWitness> find_crown(const Poset& p, std::size_t min_half_length = 2);
bool is_crown(const Poset& p, const CrownWitness& c);
std::optional<DiamondWitness> find_diamond(const Poset& p);

// No induced crown of half-length >= 3, and every induced 2-crown
// {c1, c2, c3, c4} has some z with c2, c4 < z < c1, c3.
bool is_crown_free(const Poset& p);
bool is_diamond_free(const Poset& p);
// Acyclicity of the cover graph.
bool is_cover_forest(const Poset& p);
// Crown-free and diamond-free; is_cover_forest is checked first and, when it
// holds, settles the question.
bool crown_diamond_free(const Poset& p);

// Longest fence starting at x whose other elements avoid `avoid`. Ties go to
// the lexicographically least id sequence.
FenceWitness find_max_fence_from(const Poset& p, ElementId x);
FenceWitness find_max_fence_from(const Poset& p, ElementId x, const Bitset& avoid);
FenceWitness find_max_fence(const Poset& p);

// Every fence starting at x (length 0 included), in DFS order.
std::vector<FenceWitness> enumerate_fences_from(const Poset& p, ElementId x);

// Same-length fence whose fence-minimal elements are minimal in P and whose
// fence-maximal elements are maximal in P, built by single replacements.
// PreconditionFailed unless P is crown-free and diamond-free.
FenceWitness normalize_fence(const Poset& p, const FenceWitness& f);

// Unique minimal element of U(f_{n-2}) and U(f_n) for a fence whose f_n is
// fence-minimal; checked to lie below or at f_{n-1}.
ElementId unique_min_join(const Poset& p, const FenceWitness& f, std::size_t n);

// Induced 2+2 as (a < b, c < d) and 3+1 as (a < b < c, d).
std::optional<std::array<ElementId, 4>> find_two_plus_two(const Poset& p);
std::optional<std::array<ElementId, 4>> find_three_plus_one(const Poset& p);
bool is_semiorder(const Poset& p);

}  // namespace balpairs
