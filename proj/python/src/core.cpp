#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "balpairs/extensions.hpp"
#include "balpairs/forest_count.hpp"
#include "balpairs/harness.hpp"
#include "balpairs/io.hpp"
#include "balpairs/pairs.hpp"
#include "balpairs/structure.hpp"

namespace py = pybind11;
using namespace balpairs;

namespace {

py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(py::str(r.get_num().get_str())),
                  py::int_(py::str(r.get_den().get_str())));
}

py::int_ to_int(const BigInt& v) { return py::int_(py::str(v.get_str())); }

ElementId checked(const Poset& p, ElementId x) {
  p.check_id(x);
  return x;
}

py::object opt_bool(const std::optional<bool>& v) {
  return v ? py::object(py::bool_(*v)) : py::object(py::none());
}

py::dict report_dict(const PairReport& r) {
  py::dict d;
  d["pair"] = py::make_tuple(r.pair.first, r.pair.second);
  py::dict flags;
  flags["incomparable"] = r.flags.incomparable;
  flags["critical"] = r.flags.critical;
  flags["good"] = opt_bool(r.flags.good);
  flags["very_good"] = opt_bool(r.flags.very_good);
  flags["balanced"] = opt_bool(r.flags.balanced);
  d["flags"] = flags;
  d["probability"] = r.probability ? to_fraction(*r.probability) : py::object(py::none());
  d["provenance"] = to_string(r.provenance);
  d["dualized"] = r.dualized;
  d["step"] = r.step;
  d["witness"] = r.witness;
  d["notes"] = r.notes;
  return d;
}

py::dict campaign_dict(const CampaignReport& r) {
  py::dict d;
  d["campaign"] = r.campaign;
  d["universe"] = r.universe;
  d["instances"] = r.instances;
  d["failure_count"] = r.failure_count;
  d["passed"] = r.passed();
  py::list failures;
  for (const auto& f : r.failures) failures.append(py::make_tuple(f.poset, f.detail));
  d["failures"] = failures;
  d["statistics"] = r.statistics;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact linear-extension probabilities and balanced pairs in finite posets";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", m.attr("Error").ptr());
  py::register_exception<CycleError>(m, "CycleError", m.attr("Error").ptr());
  py::register_exception<NotForestError>(m, "NotForestError", m.attr("Error").ptr());
  py::register_exception<IsChainError>(m, "IsChainError", m.attr("Error").ptr());
  py::register_exception<SizeError>(m, "SizeError", m.attr("Error").ptr());
  py::register_exception<AlgorithmStuck>(m, "AlgorithmStuck", m.attr("Error").ptr());

  py::class_<Poset>(m, "Poset")
      .def(py::init([](std::size_t n, const std::vector<Relation>& relations,
                       std::vector<std::string> labels) {
             return Poset::from_relations(n, relations, std::move(labels));
           }),
           py::arg("n"), py::arg("relations") = std::vector<Relation>{},
           py::arg("labels") = std::vector<std::string>{})
      .def_static("parse", [](const std::string& text) { return parse_poset(text); })
      .def_static("read", &read_poset_file)
      .def("__len__", &Poset::size)
      .def_property_readonly("size", &Poset::size)
      .def("less", [](const Poset& p, ElementId x, ElementId y) {
        return p.less(checked(p, x), checked(p, y));
      })
      .def("incomparable", [](const Poset& p, ElementId x, ElementId y) {
        return p.incomparable(checked(p, x), checked(p, y));
      })
      .def("up", [](const Poset& p, ElementId x) { return up_set(p, checked(p, x)); })
      .def("down", [](const Poset& p, ElementId x) { return down_set(p, checked(p, x)); })
      .def("covers", &Poset::cover_relations)
      .def("label", [](const Poset& p, ElementId x) { return p.label(checked(p, x)); })
      .def("index", [](const Poset& p, const std::string& name) {
        for (ElementId i = 0; i < p.size(); ++i)
          if (p.label(i) == name) return i;
        throw py::key_error(name);
      })
      .def("dual", [](const Poset& p) { return dual(p); })
      .def("serialize", [](const Poset& p) { return serialize(p); })
      .def("to_dot", [](const Poset& p) { return to_dot(p); })
      .def("__eq__", [](const Poset& a, const Poset& b) { return a == b; })
      .def("__repr__", [](const Poset& p) {
        return "<Poset n=" + std::to_string(p.size()) + " covers=" +
               std::to_string(p.cover_relations().size()) + ">";
      });

  m.def(
      "count_extensions",
      [](const Poset& p, const std::string& method) {
        if (method == "forest") return to_int(count_extensions_forest(p));
        if (method == "enumerate")
          return py::int_(enumerate_extensions(p).size());
        if (method == "dp" || !is_cover_forest(p)) return to_int(count_extensions(p));
        return to_int(count_extensions_forest(p));
      },
      py::arg("poset"), py::arg("method") = "auto");
  m.def("prob_before", [](const Poset& p, ElementId x, ElementId y) {
    return to_fraction(prob_before(p, checked(p, x), checked(p, y)));
  });
  m.def("is_balanced", [](const Poset& p, ElementId x, ElementId y) {
    return is_balanced(p, checked(p, x), checked(p, y));
  });
  m.def("is_good_pair", [](const Poset& p, ElementId a, ElementId b) {
    return is_good_pair(p, checked(p, a), checked(p, b)).has_value();
  });
  m.def("is_very_good_pair", [](const Poset& p, ElementId a, ElementId b) {
    return is_very_good_pair(p, checked(p, a), checked(p, b)).has_value();
  });
  m.def("is_cover_forest", &is_cover_forest);
  m.def("is_semiorder", &is_semiorder);
  m.def("is_chain", &is_chain);

  m.def(
      "find_very_good_pair_forest",
      [](const Poset& p, bool verify) {
        FinderOptions o;
        o.verify = verify;
        return report_dict(find_very_good_pair_forest(p, o));
      },
      py::arg("poset"), py::arg("verify") = false);
  m.def(
      "find_balanced_pair_semiorder",
      [](const Poset& p, bool verify) {
        FinderOptions o;
        o.verify = verify;
        return report_dict(find_balanced_pair_semiorder(p, o));
      },
      py::arg("poset"), py::arg("verify") = false);
  m.def("find_balanced_pair_exhaustive", [](const Poset& p) -> py::object {
    auto r = find_balanced_pair_exhaustive(p);
    return r ? py::object(report_dict(*r)) : py::object(py::none());
  });
  m.def("classify_all_pairs", [](const Poset& p) {
    py::list out;
    for (const auto& r : classify_all_pairs(p)) out.append(report_dict(r));
    return out;
  });

  m.def("campaign_names", &campaign_names);
  m.def(
      "run_campaign",
      [](const std::string& name, std::size_t n_max, const std::string& dedup,
         unsigned threads) {
        CampaignOptions o;
        o.dedup = parse_dedup(dedup);
        o.threads = threads;
        CampaignReport r;
        {
          py::gil_scoped_release release;
          r = run_campaign(name, n_max, o);
        }
        return campaign_dict(r);
      },
      py::arg("name"), py::arg("n_max"), py::arg("dedup") = "labeled", py::arg("threads") = 0);
}
