#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "lipset/cantor.hpp"
#include "lipset/density.hpp"
#include "lipset/lip_function.hpp"
#include "lipset/oscillation.hpp"
#include "lipset/set_json.hpp"
#include "lipset/verify.hpp"

namespace py = pybind11;

using lipset::Interval;
using lipset::IntervalSet;
using lipset::Rational;

namespace {

// Rationals cross the boundary as strings ("p/q", "p", or finite decimals)
// or python ints, so no precision is ever lost.
Rational to_rat(const py::object& o) {
  if (py::isinstance<py::int_>(o)) return Rational::from_string(py::str(o).cast<std::string>());
  if (py::isinstance<py::str>(o)) return Rational::from_string(o.cast<std::string>());
  throw py::type_error("expected an int or an exact rational string like '3/11'");
}

IntervalSet set_from_parts(const std::vector<py::tuple>& parts) {
  std::vector<Interval> intervals;
  intervals.reserve(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const py::tuple& t = parts[i];
    if (t.size() != 4)
      throw py::value_error("parts[" + std::to_string(i) + "]: expected (lo, hi, lo_closed, hi_closed)");
    try {
      auto lo = lipset::ext_from_string(py::str(t[0]).cast<std::string>());
      auto hi = lipset::ext_from_string(py::str(t[1]).cast<std::string>());
      intervals.emplace_back(lo, hi, t[2].cast<bool>(), t[3].cast<bool>());
    } catch (const std::exception& e) {
      throw py::value_error("parts[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return IntervalSet::canonical(std::move(intervals));
}

std::vector<py::tuple> set_parts(const IntervalSet& s) {
  std::vector<py::tuple> out;
  for (const Interval& p : s.parts())
    out.push_back(py::make_tuple(p.lo.to_string(), p.hi.to_string(), p.lo_closed, p.hi_closed));
  return out;
}

py::dict sosd_dict(const lipset::SosdReport& rep) {
  py::dict d;
  d["x"] = rep.point.to_string();
  d["r_min"] = rep.r_min.to_string();
  d["r_max"] = rep.r_max.to_string();
  d["threshold"] = rep.threshold.to_string();
  d["min_max_density"] = rep.min_max_density.to_string();
  d["worst_radius"] = rep.worst_radius.to_string();
  d["pass"] = rep.pass;
  return d;
}

py::dict stage_dict(const lipset::CantorStage& st) {
  py::dict d;
  d["depth"] = st.depth;
  d["window"] = py::make_tuple(st.window.lo.to_string(), st.window.hi.to_string());
  d["geometry_materialized"] = st.geometry;
  d["complement_measure"] = st.complement_measure().to_string();
  d["removed_measure"] = st.removed_measure().to_string();
  py::list gens;
  for (const auto& g : st.ledger) {
    py::dict e;
    e["level"] = g.level;
    e["removed"] = g.added_measure.to_string();
    e["complement"] = g.complement_after.to_string();
    e["components"] = g.component_count.to_string();
    gens.append(e);
  }
  d["generations"] = gens;
  return d;
}

}  // namespace

PYBIND11_MODULE(_lipset, m) {
  m.doc() = "Exact interval-set algebra, one-sided densities, zig-zag function "
            "builder and fat-Cantor constructions. Rationals are exchanged as "
            "exact 'p/q' strings.";

  py::class_<IntervalSet>(m, "IntervalSet")
      .def(py::init([](const std::vector<py::tuple>& parts) { return set_from_parts(parts); }),
           py::arg("parts"),
           "Canonicalize a list of (lo, hi, lo_closed, hi_closed) tuples; "
           "endpoints are exact rational strings, '-inf' or '+inf'.")
      .def_static("from_json",
                  [](const std::string& text) {
                    return lipset::set_from_json(nlohmann::json::parse(text));
                  })
      .def("to_json", [](const IntervalSet& s) { return lipset::set_to_json(s).dump(); })
      .def("parts", [](const IntervalSet& s) { return set_parts(s); })
      .def("contains", [](const IntervalSet& s, const py::object& x) { return s.contains(to_rat(x)); })
      .def("measure", [](const IntervalSet& s) { return lipset::measure(s).to_string(); })
      .def("is_closed", [](const IntervalSet& s) { return lipset::is_closed(s); })
      .def("is_open", [](const IntervalSet& s) { return lipset::is_open(s); })
      .def("__eq__", [](const IntervalSet& a, const IntervalSet& b) { return a == b; })
      .def("__repr__", [](const IntervalSet& s) { return s.to_string(); });

  m.def("union_of", [](const IntervalSet& a, const IntervalSet& b) { return lipset::union_of(a, b); });
  m.def("intersect", [](const IntervalSet& a, const IntervalSet& b) { return lipset::intersect(a, b); });
  m.def("complement_in",
        [](const IntervalSet& a, const py::object& lo, const py::object& hi) {
          return lipset::complement_in(a, Interval::closed(to_rat(lo), to_rat(hi)));
        },
        py::arg("set"), py::arg("lo"), py::arg("hi"));
  m.def("measure_in", [](const IntervalSet& a, const py::object& lo, const py::object& hi) {
    return lipset::measure_in(a, Interval::closed(to_rat(lo), to_rat(hi))).to_string();
  });
  m.def("distance", [](const py::object& x, const IntervalSet& a) {
    return lipset::distance(to_rat(x), a).to_string();
  });

  m.def("left_density", [](const IntervalSet& e, const py::object& x, const py::object& r) {
    return lipset::left_density(e, to_rat(x), to_rat(r)).to_string();
  });
  m.def("right_density", [](const IntervalSet& e, const py::object& x, const py::object& r) {
    return lipset::right_density(e, to_rat(x), to_rat(r)).to_string();
  });
  m.def("sosd_scan",
        [](const IntervalSet& e, const py::object& x, const py::object& r_max,
           const py::object& r_min, const py::object& threshold) {
          return sosd_dict(lipset::sosd_scan(e, to_rat(x), to_rat(r_max), to_rat(r_min),
                                             to_rat(threshold)));
        },
        py::arg("set"), py::arg("x"), py::arg("r_max"), py::arg("r_min"),
        py::arg("threshold") = py::str("9/10"));

  py::class_<lipset::LipFunction>(m, "LipFunction")
      .def(py::init([](const std::vector<IntervalSet>& stages) {
             return lipset::LipFunction(lipset::NestedChain::validate(stages));
           }),
           py::arg("stages"),
           "Build f from a nested chain of closed sets (innermost first).")
      .def_static("from_chain_json",
                  [](const std::string& text) {
                    return lipset::LipFunction(lipset::NestedChain::validate(
                        lipset::stages_from_json(nlohmann::json::parse(text))));
                  })
      .def("__call__",
           [](const lipset::LipFunction& f, const py::object& x) {
             return f.eval(to_rat(x)).to_string();
           })
      .def("eval", [](const lipset::LipFunction& f, const py::object& x) {
        return f.eval(to_rat(x)).to_string();
      })
      .def("eval_level", [](const lipset::LipFunction& f, std::size_t n, const py::object& x) {
        return f.eval_level(n, to_rat(x)).to_string();
      })
      .def("depth", [](const lipset::LipFunction& f) { return f.chain().depth(); });

  m.def("lip_scan",
        [](const lipset::LipFunction& f, const py::object& x, const py::object& r_max,
           const py::object& r_min, int refinement) {
          auto est = lipset::lip_scan(f, to_rat(x), to_rat(r_max), to_rat(r_min),
                                      Rational(1, 2), refinement);
          py::dict d;
          d["x"] = est.x.to_string();
          d["lip_lower"] = est.lip_lower.to_string();
          d["lip_upper"] = est.lip_upper.to_string();
          d["Lip_lower"] = est.Lip_lower.to_string();
          d["Lip_upper"] = est.Lip_upper.to_string();
          py::list rows;
          for (const auto& row : est.rows)
            rows.append(py::make_tuple(row.radius.to_string(), row.lower.to_string(),
                                       row.upper.to_string()));
          d["rows"] = rows;
          return d;
        },
        py::arg("f"), py::arg("x"), py::arg("r_max"), py::arg("r_min"),
        py::arg("refinement") = 64);

  m.def("level1_open", [](const py::object& a, const py::object& b) {
    return lipset::level1_open(to_rat(a), to_rat(b));
  });
  m.def("levelk_open", [](const py::object& a, const py::object& b, int k) {
    return lipset::levelk_open(to_rat(a), to_rat(b), k);
  });
  m.def("f_components",
        [](const IntervalSet& g, const py::object& lo, const py::object& hi) {
          py::list out;
          for (const auto& [comp, tag] :
               lipset::f_components(g, Interval::closed(to_rat(lo), to_rat(hi))))
            out.append(py::make_tuple(comp.lo.to_string(), comp.hi.to_string(), tag));
          return out;
        },
        py::arg("set"), py::arg("window_lo"), py::arg("window_hi"));

  m.def("build_f_infinity",
        [](const std::vector<int>& levels, int depth, const py::object& budget) {
          lipset::LevelSchedule sched;
          sched.levels = levels;
          sched.budget = to_rat(budget);
          return stage_dict(lipset::build_f_infinity(sched, depth));
        },
        py::arg("levels"), py::arg("depth"), py::arg("budget") = py::str("1/2"));
  m.def("default_schedule", [](int depth) {
    return lipset::LevelSchedule::default_for(depth).levels;
  });

  m.def("verify",
        [](std::uint64_t seed, const std::string& suite) {
          lipset::VerifyOptions opts;
          opts.seed = seed;
          opts.suite = suite;
          auto results = lipset::run_verification(opts);
          py::list out;
          for (const auto& r : results) {
            py::dict d;
            d["suite"] = r.suite;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["detail"] = r.detail;
            out.append(d);
          }
          return out;
        },
        py::arg("seed") = 42, py::arg("suite") = "all");
}
