#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "balpairs/extensions.hpp"
#include "balpairs/poset.hpp"
#include "balpairs/rational.hpp"

namespace balpairs {

enum class PosetFilter { all, forest, semiorder, connected, non_chain };
enum class Dedup { labeled, isomorphism };

std::string to_string(PosetFilter f);
std::string to_string(Dedup d);
PosetFilter parse_filter(const std::string& s);
Dedup parse_dedup(const std::string& s);

// Compact poset for generation: up[x] is the bit mask of elements above x.
struct SmallPoset {
  std::uint8_t n = 0;
  std::array<std::uint16_t, 16> up{};

  Poset to_poset() const;
  bool operator==(const SmallPoset&) const = default;
};

SmallPoset to_small(const Poset& p);

// Relabels to the least relation-matrix encoding; n <= 8.
SmallPoset canonical_form(const SmallPoset& s);
std::uint64_t canonical_code(const SmallPoset& s);

struct PosetStream {
  std::size_t n = 0;
  PosetFilter filter = PosetFilter::all;
  Dedup dedup = Dedup::labeled;
};

struct GenerationLimits {
  std::size_t labeled_max = 7;
  std::size_t isomorphism_max = 8;
};

// Every poset of the stream exactly once: labeled posets on 0..n-1, or one
// canonical representative per isomorphism class. Order is deterministic.
void for_each_poset(const PosetStream& stream, const std::function<void(const Poset&)>& visit,
                    const GenerationLimits& limits = {});
std::vector<SmallPoset> generate_posets(const PosetStream& stream,
                                        const GenerationLimits& limits = {});

// Count of labeled posets on n points by filtering all relation matrices.
std::uint64_t count_posets_bruteforce(std::size_t n);

// Uniform random labelled tree (Pruefer code) with each edge oriented by a
// fair coin, then closed.
Poset random_tree_poset(std::size_t n, std::mt19937_64& rng);

// Largest min(P(x<y), P(y<x)) over incomparable pairs.
Rational balance_margin(const Poset& p, const EngineLimits& limits = {});

struct CampaignFailure {
  std::string poset;  // serialized in the parse_poset format
  std::string detail;
  bool operator<(const CampaignFailure& o) const {
    return std::tie(poset, detail) < std::tie(o.poset, o.detail);
  }
};

struct CampaignReport {
  std::string campaign;
  std::string universe;
  std::uint64_t instances = 0;
  std::uint64_t failure_count = 0;
  std::vector<CampaignFailure> failures;  // first few, sorted
  std::map<std::string, std::string> statistics;
  double seconds = 0;

  bool passed() const { return failure_count == 0; }
  // One JSON object on one line; excludes timing.
  std::string to_json_line() const;
  std::string summary() const;
};

struct CampaignOptions {
  Dedup dedup = Dedup::labeled;
  unsigned threads = 0;  // 0: hardware concurrency
  EngineLimits limits;
  GenerationLimits generation;
};

const std::vector<std::string>& campaign_names();

// Throws UsageError for unknown names.
CampaignReport run_campaign(const std::string& name, std::size_t n_max,
                            const CampaignOptions& options = {});

// Structural checks of the forest finder on random tree posets.
CampaignReport run_random_forest_campaign(std::size_t n, std::size_t samples, std::uint64_t seed,
                                          const CampaignOptions& options = {});

}  // namespace balpairs
