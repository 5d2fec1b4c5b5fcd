#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cylclasses/classify.hpp"
#include "cylclasses/enumerate.hpp"
#include "cylclasses/moves.hpp"
#include "cylclasses/orbits.hpp"
#include "cylclasses/perm.hpp"
#include "cylclasses/reference.hpp"
#include "cylclasses/strata.hpp"
#include "cylclasses/svg.hpp"
#include "cylclasses/version.hpp"

namespace py = pybind11;
using namespace cylclasses;

namespace {

std::vector<std::string> row_names(const Permutation& p, bool top) {
  std::vector<std::string> out;
  for (Letter l : top ? p.top() : p.bottom()) out.push_back(p.alphabet().name(l));
  return out;
}

MoveSet moves_arg(const std::optional<std::string>& moves, const Permutation& p) {
  return moves ? MoveSet::parse(*moves) : MoveSet::default_for(p.kind());
}

OrbitLimits limits_arg(std::optional<std::uint64_t> max_states,
                       std::optional<double> max_seconds) {
  OrbitLimits lim;
  lim.max_states = max_states;
  lim.max_seconds = max_seconds;
  return lim;
}

PermKind kind_arg(const std::string& kind) {
  if (kind == "abelian") return PermKind::Abelian;
  if (kind == "quadratic") return PermKind::Quadratic;
  throw MalformedInput("kind must be \"abelian\" or \"quadratic\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "one-cylinder permutation data: strata, elementary moves, orbits";
  m.attr("__version__") = kVersion;
  m.attr("MAX_ENUMERATION_LETTERS") = kMaxKeyLetters;

  py::register_exception<Error>(m, "CylError", PyExc_ValueError);

  py::class_<Permutation>(m, "Permutation")
      .def_static("parse", &Permutation::parse, py::arg("text"))
      .def_property_readonly(
          "kind", [](const Permutation& p) { return std::string(kind_name(p.kind())); })
      .def_property_readonly("letters", &Permutation::letters)
      .def_property_readonly("top", [](const Permutation& p) { return row_names(p, true); })
      .def_property_readonly("bottom",
                             [](const Permutation& p) { return row_names(p, false); })
      .def("format", &Permutation::format)
      .def("one_line",
           [](const Permutation& p) {
             const auto w = p.one_line();
             std::vector<std::string> tokens;
             for (Letter l : w.tokens) tokens.push_back(w.alphabet.name(l));
             return py::make_tuple(tokens, w.bar);
           })
      .def("one_line_text", [](const Permutation& p) { return p.one_line().text(); })
      .def("letter_type",
           [](const Permutation& p, const std::string& name) {
             return std::string(letter_type_name(p.letter_type(p.letter(name))));
           })
      .def("is_mixed", &Permutation::is_mixed)
      .def("canonical", &Permutation::canonical_form)
      .def("is_canonical", &Permutation::is_canonical)
      .def("signature",
           [](const Permutation& p) { return singularity_profile(p).str(); })
      .def("genus", [](const Permutation& p) { return singularity_profile(p).genus; })
      .def("corner_class_sizes",
           [](const Permutation& p) {
             std::vector<std::size_t> sizes;
             for (const auto& c : corner_cycles(p)) sizes.push_back(c.size());
             std::sort(sizes.rbegin(), sizes.rend());
             return sizes;
           })
      .def("euler_check", &euler_check)
      .def("__str__", &Permutation::format)
      .def("__repr__",
           [](const Permutation& p) { return "Permutation(\"" + p.format() + "\")"; })
      .def("__eq__", [](const Permutation& a, const Permutation& b) { return a == b; })
      .def("__hash__",
           [](const Permutation& p) { return std::hash<std::string>{}(p.format()); });

  m.def("parse", &Permutation::parse, py::arg("text"));

  // moves
  m.def("t_applicable",
        [](const Permutation& p, const std::string& a) {
          return t_applicable(p, p.letter(a));
        });
  m.def("t_inverse_applicable",
        [](const Permutation& p, const std::string& a) {
          return t_inverse_applicable(p, p.letter(a));
        });
  m.def("t_move",
        [](const Permutation& p, const std::string& a) { return t_move(p, p.letter(a)); });
  m.def("t_inverse",
        [](const Permutation& p, const std::string& a) { return t_inverse(p, p.letter(a)); });
  m.def("u_top", &u_top);
  m.def("u_bottom", &u_bottom);
  m.def("s_move", &s_move);
  m.def("apply_move", [](const Permutation& p, const std::string& name) {
    return apply_move(p, parse_move(name, p));
  });
  m.def(
      "neighbors",
      [](const Permutation& p, std::optional<std::string> moves) {
        std::vector<std::pair<std::string, Permutation>> out;
        for (auto& [mk, q] : neighbors(p, moves_arg(moves, p)))
          out.emplace_back(mk.str(p.alphabet()), std::move(q));
        return out;
      },
      py::arg("perm"), py::arg("moves") = std::nullopt);

  // strata extras
  m.def("default_suspension", [](const Permutation& p) {
    const auto s = default_suspension(p);
    return py::make_tuple(s.zeta, s.height);
  });
  m.def(
      "polygon",
      [](const Permutation& p) {
        const auto chains = polygon(p, default_suspension(p));
        return py::make_tuple(chains.top, chains.bottom);
      },
      py::arg("perm"));
  m.def("polygon_svg",
        [](const Permutation& p) { return polygon_svg(p, default_suspension(p)); });

  // enumeration
  struct PyUniverse {
    UniverseEnumerator inner;
  };
  py::class_<PyUniverse>(m, "Universe")
      .def("__iter__", [](PyUniverse& u) -> PyUniverse& { return u; })
      .def("__next__", [](PyUniverse& u) {
        auto p = u.inner.next();
        if (!p) throw py::stop_iteration();
        return *p;
      });
  m.def(
      "enumerate",
      [](const std::string& kind, int letters, bool mixed,
         std::optional<std::string> signature) {
        EnumerationSpec spec;
        spec.kind = kind_arg(kind);
        spec.letters = letters;
        spec.require_mixed = mixed;
        if (signature) spec.signature_filter = parse_signature(*signature);
        return PyUniverse{UniverseEnumerator(spec)};
      },
      py::arg("kind"), py::arg("letters"), py::arg("mixed") = false,
      py::arg("signature") = std::nullopt);
  m.def("double_factorial_odd", &double_factorial_odd);

  // orbits
  py::class_<OrbitResult>(m, "OrbitResult")
      .def_property_readonly(
          "members",
          [](const OrbitResult& r) {
            std::vector<Permutation> out;
            out.reserve(r.members.size());
            for (const auto& k : r.members) out.push_back(decode(k));
            return out;
          })
      .def_property_readonly("size",
                             [](const OrbitResult& r) { return r.members.size(); })
      .def_readonly("exhausted", &OrbitResult::exhausted)
      .def_property_readonly("stats",
                             [](const OrbitResult& r) {
                               py::dict d;
                               d["states_expanded"] = r.stats.states_expanded;
                               d["moves_applied"] = r.stats.moves_applied;
                               d["frontier_peak"] = r.stats.frontier_peak;
                               return d;
                             })
      .def("path_to", [](const OrbitResult& r, const Permutation& p) {
        auto path = r.path_to(encode(p.canonical_form()));
        if (!path) return py::object(py::none());
        std::vector<std::string> names;
        for (auto mk : *path) names.push_back(mk.str());
        return py::object(py::cast(names));
      });
  m.def(
      "orbit_closure",
      [](const Permutation& seed, std::optional<std::string> moves,
         std::optional<std::uint64_t> max_states, std::optional<double> max_seconds,
         int workers, bool trace) {
        return orbit_closure(seed, moves_arg(moves, seed),
                             limits_arg(max_states, max_seconds), workers, trace);
      },
      py::arg("seed"), py::arg("moves") = std::nullopt,
      py::arg("max_states") = std::nullopt, py::arg("max_seconds") = std::nullopt,
      py::arg("workers") = 1, py::arg("trace") = false);
  m.def(
      "same_class",
      [](const Permutation& p, const Permutation& q, std::optional<std::string> moves,
         std::optional<std::uint64_t> max_states, std::optional<double> max_seconds,
         int workers) {
        return std::string(tri_name(same_class(p, q, moves_arg(moves, p),
                                               limits_arg(max_states, max_seconds),
                                               workers)));
      },
      py::arg("p"), py::arg("q"), py::arg("moves") = std::nullopt,
      py::arg("max_states") = std::nullopt, py::arg("max_seconds") = std::nullopt,
      py::arg("workers") = 1);
  m.def(
      "partition",
      [](const std::vector<Permutation>& universe, std::optional<std::string> moves,
         int workers) {
        if (universe.empty()) throw MalformedInput("empty universe");
        const MoveSet ms = moves ? MoveSet::parse(*moves)
                                 : MoveSet::default_for(universe.front().kind());
        std::vector<py::dict> out;
        for (const auto& c : partition(universe, ms, workers).classes) {
          py::dict d;
          d["representative"] = c.representative.format();
          d["size"] = c.size;
          d["mixed"] = c.mixed_count;
          d["signature"] = c.signature.str();
          out.push_back(std::move(d));
        }
        return out;
      },
      py::arg("universe"), py::arg("moves") = std::nullopt, py::arg("workers") = 1);

  // classification
  m.def(
      "classify",
      [](const std::string& kind, int letters, bool mixed,
         std::optional<std::string> moves, std::optional<std::string> signature,
         bool ignore_marked_points, int workers) {
        ClassifyOptions opt;
        opt.spec.kind = kind_arg(kind);
        opt.spec.letters = letters;
        opt.spec.require_mixed = mixed;
        if (signature) opt.spec.signature_filter = parse_signature(*signature);
        opt.moves = moves ? MoveSet::parse(*moves) : MoveSet::default_for(opt.spec.kind);
        opt.ignore_marked_points = ignore_marked_points;
        opt.workers = workers;
        return report_json(classify(opt));
      },
      py::arg("kind"), py::arg("letters"), py::arg("mixed") = false,
      py::arg("moves") = std::nullopt, py::arg("signature") = std::nullopt,
      py::arg("ignore_marked_points") = false, py::arg("workers") = 1);

  // reference table
  m.def("reference_lookup", [](const std::string& signature) -> py::object {
    const auto* e = ReferenceTable::embedded().lookup(parse_signature(signature));
    if (!e) return py::none();
    py::dict d;
    d["signature"] = e->signature.str();
    d["component_count"] = e->component_count;
    d["labels"] = e->labels;
    d["source"] = e->source;
    return d;
  });
}
