// balpairs: command-line front end over the library.
//
// Exit codes: 0 success / campaign passed, 1 domain error or failed
// campaign, 2 usage or parse error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "balpairs/extensions.hpp"
#include "balpairs/forest_count.hpp"
#include "balpairs/harness.hpp"
#include "balpairs/io.hpp"
#include "balpairs/pairs.hpp"
#include "balpairs/structure.hpp"

using namespace balpairs;
using json = nlohmann::ordered_json;

namespace {

ElementId lookup(const Poset& p, const std::string& name) {
  for (ElementId i = 0; i < p.size(); ++i)
    if (p.label(i) == name) return i;
  throw UsageError("unknown element '" + name + "'");
}

json optional_flag(const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); }

json report_json(const Poset& p, const PairReport& r) {
  json j;
  j["pair"] = {p.label(r.pair.first), p.label(r.pair.second)};
  j["ids"] = {r.pair.first, r.pair.second};
  j["flags"] = {{"incomparable", r.flags.incomparable},
                {"critical", r.flags.critical},
                {"good", optional_flag(r.flags.good)},
                {"very_good", optional_flag(r.flags.very_good)},
                {"balanced", optional_flag(r.flags.balanced)}};
  j["probability"] = r.probability ? json(fraction_string(*r.probability)) : json(nullptr);
  j["provenance"] = to_string(r.provenance);
  j["dualized"] = r.dualized;
  j["step"] = r.step;
  json w = json::array();
  for (auto x : r.witness) w.push_back(p.label(x));
  j["witness"] = w;
  j["notes"] = r.notes;
  return j;
}

BigInt count_with(const Poset& p, const std::string& method) {
  if (method == "forest") return count_extensions_forest(p);
  if (method == "dp") return count_extensions(p);
  if (method == "enumerate") return BigInt(static_cast<unsigned long>(enumerate_extensions(p).size()));
  return is_cover_forest(p) ? count_extensions_forest(p) : count_extensions(p);
}

PairReport good_chain_pair(const Poset& p) {
  const PrecedenceTable table(p);
  for (const auto& [a, b] : incomparable_pairs(p))
    if (auto cert = is_good_pair(p, a, b, table)) return balanced_from_good(p, *cert);
  throw NotApplicableError("poset has no good pair");
}

PairReport pair_with(const Poset& p, const std::string& strategy) {
  FinderOptions opts;
  opts.verify = true;
  if (strategy == "forest") return find_very_good_pair_forest(p, opts);
  if (strategy == "semiorder") return find_balanced_pair_semiorder(p, opts);
  if (strategy == "good-chain") return good_chain_pair(p);
  if (strategy == "exhaustive") {
    if (is_chain(p)) throw IsChainError("poset is totally ordered");
    auto r = find_balanced_pair_exhaustive(p);
    if (!r) throw TheoremViolated("no balanced pair");
    return *r;
  }
  if (is_cover_forest(p)) return find_very_good_pair_forest(p, opts);
  if (is_semiorder(p)) return find_balanced_pair_semiorder(p, opts);
  return pair_with(p, "exhaustive");
}

std::string join_labels(const Poset& p, const std::vector<ElementId>& ids) {
  std::string out;
  for (auto x : ids) out += (out.empty() ? "" : " ") + p.label(x);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced pairs in finite posets"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::string file, method = "auto", strategy = "auto", x_name, y_name;

  auto* count = app.add_subcommand("count", "number of linear extensions");
  count->add_option("file", file)->required();
  count->add_option("--method", method)
      ->check(CLI::IsMember({"auto", "dp", "forest", "enumerate"}));

  auto* prob = app.add_subcommand("prob", "probability that x precedes y");
  prob->add_option("file", file)->required();
  prob->add_option("x", x_name)->required();
  prob->add_option("y", y_name)->required();

  auto* pair = app.add_subcommand("pair", "find a balanced or very good pair");
  pair->add_option("file", file)->required();
  pair->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"auto", "forest", "semiorder", "exhaustive", "good-chain"}));

  auto* classify = app.add_subcommand("classify", "classify every incomparable pair");
  classify->add_option("file", file)->required();

  bool want_forest = false, want_semiorder = false;
  auto* check = app.add_subcommand("check", "structural checks");
  check->add_option("file", file)->required();
  check->add_flag("--forest", want_forest, "fail unless the cover graph is a forest");
  check->add_flag("--semiorder", want_semiorder, "fail unless the poset is a semiorder");

  auto* dot = app.add_subcommand("export-dot", "Hasse diagram in DOT");
  dot->add_option("file", file)->required();

  std::string campaign, out_path, dedup = "labeled";
  std::size_t n_max = 5, samples = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  auto* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->add_option("--campaign", campaign)->required();
  verify->add_option("--n-max", n_max);
  verify->add_option("--out", out_path);
  verify->add_option("--dedup", dedup)->check(CLI::IsMember({"labeled", "isomorphism"}));
  verify->add_option("--threads", threads);
  verify->add_option("--samples", samples, "random_forest_finder only");
  verify->add_option("--seed", seed, "random_forest_finder only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      CampaignOptions opts;
      opts.dedup = parse_dedup(dedup);
      opts.threads = threads;
      const CampaignReport report = campaign == "random_forest_finder"
                                        ? run_random_forest_campaign(n_max, samples, seed, opts)
                                        : run_campaign(campaign, n_max, opts);
      std::cout << report.summary() << '\n';
      if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::app);
        if (!out) throw Error("cannot open " + out_path);
        out << report.to_json_line() << '\n';
      }
      return report.passed() ? 0 : 1;
    }

    const Poset p = read_poset_file(file);
    if (*count) {
      const BigInt c = count_with(p, method);
      if (as_json)
        std::cout << json{{"count", c.get_str()}, {"method", method}}.dump() << '\n';
      else
        std::cout << c.get_str() << '\n';
    } else if (*prob) {
      const Rational r = prob_before(p, lookup(p, x_name), lookup(p, y_name));
      if (as_json)
        std::cout << json{{"x", x_name}, {"y", y_name}, {"probability", fraction_string(r)}}.dump()
                  << '\n';
      else
        std::cout << fraction_string(r) << '\n';
    } else if (*pair) {
      std::cout << report_json(p, pair_with(p, strategy)).dump(as_json ? -1 : 2) << '\n';
    } else if (*classify) {
      const auto all = classify_all_pairs(p);
      if (as_json) {
        json arr = json::array();
        for (const auto& r : all) arr.push_back(report_json(p, r));
        std::cout << arr.dump() << '\n';
      } else {
        for (const auto& r : all) {
          std::cout << p.label(r.pair.first) << ' ' << p.label(r.pair.second) << "  P="
                    << (r.probability ? fraction_string(*r.probability) : "?");
          if (r.flags.critical) std::cout << " critical";
          if (r.flags.good.value_or(false)) std::cout << " good";
          if (r.flags.very_good.value_or(false)) std::cout << " very-good";
          if (r.flags.balanced.value_or(false)) std::cout << " balanced";
          std::cout << '\n';
        }
      }
    } else if (*check) {
      const bool forest = is_cover_forest(p), semi = is_semiorder(p);
      json j{{"elements", p.size()},
             {"covers", p.cover_relations().size()},
             {"chain", is_chain(p)},
             {"forest", forest},
             {"crown_free", is_crown_free(p)},
             {"diamond_free", is_diamond_free(p)},
             {"semiorder", semi}};
      if (as_json)
        std::cout << j.dump() << '\n';
      else
        for (const auto& [k, v] : j.items()) std::cout << k << ": " << v.dump() << '\n';
      if (want_forest && !forest) {
        std::cerr << "NotForest: cover cycle " << join_labels(p, cover_cycle(p)) << '\n';
        return 1;
      }
      if (want_semiorder && !semi) {
        std::cerr << "NotSemiorder\n";
        return 1;
      }
    } else if (*dot) {
      std::cout << to_dot(p);
    }
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const CycleError& e) {
    std::cerr << "cycle error: " << e.what() << '\n';
    return 2;
  } catch (const AlgorithmStuck& e) {
    std::cerr << "algorithm stuck: " << e.what() << "\n" << e.state() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
