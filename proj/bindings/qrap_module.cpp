// Python bindings: family specs, targets, and reports cross the boundary as
// plain dicts/lists mirroring the JSON schemas the CLI uses.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "qrap/asymptotics.hpp"
#include "qrap/counting.hpp"
#include "qrap/fixtures.hpp"
#include "qrap/io.hpp"
#include "qrap/signatures.hpp"
#include "qrap/structure.hpp"
#include "qrap/weil.hpp"

namespace py = pybind11;
using namespace qrap;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& e : j) out.append(json_to_py(e));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
      return out;
    }
    default: return py::none();
  }
}

json py_to_json(py::handle h) {
  if (h.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
  if (py::isinstance<py::int_>(h)) return h.cast<long long>();
  if (py::isinstance<py::float_>(h)) return h.cast<double>();
  if (py::isinstance<py::str>(h)) return h.cast<std::string>();
  if (py::isinstance<py::list>(h) || py::isinstance<py::tuple>(h)) {
    json a = json::array();
    for (py::handle e : h) a.push_back(py_to_json(e));
    return a;
  }
  if (py::isinstance<py::dict>(h)) {
    json o = json::object();
    for (auto item : h.cast<py::dict>()) o[item.first.cast<std::string>()] = py_to_json(item.second);
    return o;
  }
  throw std::invalid_argument("unsupported python value in a spec document");
}

FamilySpec spec_from_py(py::dict d) { return io::family_from_json(py_to_json(d)); }

SupportSide side_from(const std::string& s) {
  if (s == "residue") return SupportSide::residue;
  if (s == "nonresidue") return SupportSide::nonresidue;
  throw std::invalid_argument("side must be 'residue' or 'nonresidue'");
}

Target target_from_py(py::dict d) {
  const std::string type = d["type"].cast<std::string>();
  if (type == "shift_pattern") {
    return ShiftPatternTarget{d["Z"].cast<std::vector<i64>>(), d["eps"].cast<std::vector<int>>()};
  }
  if (type == "shift_support") {
    return ShiftSupportTarget{d["Z"].cast<std::vector<i64>>(), side_from(d["side"].cast<std::string>())};
  }
  if (type == "multi_pattern") {
    return MultiPatternTarget{d["b"].cast<std::vector<i64>>(), d["s"].cast<i64>(),
                              d["eps"].cast<std::vector<int>>()};
  }
  if (type == "multi_support") {
    return MultiSupportTarget{d["b"].cast<std::vector<i64>>(), d["s"].cast<i64>(),
                              side_from(d["side"].cast<std::string>())};
  }
  if (type == "constant_sign") {
    return ConstantSignTarget{as_normalized(spec_from_py(d["spec"].cast<py::dict>())),
                              d["eps"].cast<int>()};
  }
  if (type == "ap1_pattern") {
    return Ap1PatternTarget{d["a"].cast<i64>(), d["b"].cast<i64>(), d["s"].cast<i64>(),
                            d["eps"].cast<std::vector<int>>()};
  }
  if (type == "ap1_support") {
    return Ap1SupportTarget{d["a"].cast<i64>(), d["b"].cast<i64>(), d["s"].cast<i64>(),
                            side_from(d["side"].cast<std::string>())};
  }
  throw std::invalid_argument("unknown target type: " + type);
}

py::dict prediction_to_py(const Prediction& pred) {
  py::dict out;
  out["coefficient"] = pred.coefficient.str();
  out["coefficient_value"] = pred.coefficient.to_double();
  out["valid_on"] = pred.valid_on == ValidOn::pi_plus_only ? "pi_plus_only" : "all_primes";
  out["zero_on_pi_minus"] = pred.zero_on_pi_minus;
  out["bound_form"] = pred.bound_form == BoundForm::sqrt_p ? "c*sqrt(p)" : "c*sqrt(p)*log(p)";
  out["bound_constant"] = pred.bound_constant;
  if (pred.structure) out["structure"] = json_to_py(io::structure_to_json(*pred.structure));
  return out;
}

}  // namespace

PYBIND11_MODULE(qrap, m) {
  m.doc() = "Exact counting and asymptotic verification of quadratic-residue patterns "
            "in arithmetic-progression families";

  py::class_<ResidueClassifier>(m, "ResidueClassifier")
      .def(py::init<u64>(), py::arg("p"))
      .def(py::init<u64, u64>(), py::arg("p"), py::arg("table_threshold"))
      .def_property_readonly("p", &ResidueClassifier::prime)
      .def("chi", &ResidueClassifier::chi, py::arg("a"));

  m.def("chi", [](u64 p, i64 a) { return chi_euler(p, a); }, py::arg("p"), py::arg("a"),
        "Legendre character of a mod p");
  m.def("primes_in_range",
        [](u64 lo, u64 hi) { return primes_in_range(lo, hi); }, py::arg("lo"), py::arg("hi"));
  m.def("is_square", &is_square, py::arg("n"));
  m.def("is_prime", &is_prime, py::arg("n"));

  m.def("normalize", [](py::dict spec) {
    const NormalizedFamily f = as_normalized(spec_from_py(spec));
    py::dict out;
    out["kind"] = "normalized";
    out["B"] = f.B;
    out["S"] = f.S;
    return out;
  }, py::arg("spec"), "Canonical (B, S) form of any family spec");

  m.def("analyze", [](py::dict spec) {
    return json_to_py(io::structure_to_json(analyze(as_normalized(spec_from_py(spec)))));
  }, py::arg("spec"), "Interaction structure: kmax, lambda, alpha, e, branch");

  m.def("gamma", [](std::vector<i64> b, i64 s, const std::string& mode) {
    const GammaMode g = mode == "brute" ? GammaMode::brute
                      : mode == "closed_form" ? GammaMode::closed_form
                                              : throw std::invalid_argument("mode must be brute or closed_form");
    return gamma_value(b, s, g);
  }, py::arg("b"), py::arg("s"), py::arg("mode") = "brute");

  m.def("defect_and_cardinality", [](std::vector<i64> a, i64 b, i64 s) {
    const auto r = defect_and_cardinality(a, b, s);
    return py::make_tuple(r.defect, r.cardinality);
  }, py::arg("a"), py::arg("b"), py::arg("s"));

  m.def("overlap_diagram", [](std::vector<i64> gaps, i64 s) {
    const OverlapDiagram d = overlap_diagram(gaps, s);
    py::list blocks;
    for (const auto& blk : d.blocks) {
      py::dict b;
      b["support"] = py::make_tuple(blk.first_row, blk.last_row);
      b["gaps"] = blk.gap_run;
      b["columns"] = blk.columns;
      blocks.append(b);
    }
    py::dict out;
    out["rows"] = d.rows;
    out["blocks"] = blocks;
    out["total_columns"] = d.total_columns;
    return out;
  }, py::arg("gaps"), py::arg("s"));

  m.def("enumerate_even_overlap_sets", [](py::dict spec) {
    return enumerate_even_overlap_sets(as_normalized(spec_from_py(spec)));
  }, py::arg("spec"));

  m.def("quotient_diagram_e", [](py::dict spec) {
    const auto qa = quotient_diagram_e(spec_from_py(spec));
    py::list diagrams;
    for (const auto& ld : qa.diagram.diagrams) {
      py::dict d;
      d["row_labels"] = ld.row_labels;
      d["gaps"] = ld.diagram.gaps;
      diagrams.append(d);
    }
    py::dict out;
    out["e"] = qa.e;
    out["lambda"] = qa.lambda;
    out["diagrams"] = diagrams;
    return out;
  }, py::arg("spec"));

  m.def("generate_admissible", [](std::vector<i64> d, i64 a1, i64 b1, std::vector<i64> t, i64 s) {
    return json_to_py(io::family_to_json(generate_admissible(d, a1, b1, t, s)));
  }, py::arg("d"), py::arg("a1"), py::arg("b1"), py::arg("t"), py::arg("s") = 1);

  m.def("signature", [](u64 p, py::dict spec, std::optional<std::vector<int>> eta) {
    const StructureReport st = analyze(as_normalized(spec_from_py(spec)));
    const SignatureReport sig = eta ? signature_of(p, st, *eta) : signature_of(p, st);
    return json_to_py(io::signature_to_json(sig));
  }, py::arg("p"), py::arg("spec"), py::arg("eta") = std::nullopt);

  m.def("classify_primes", [](py::dict spec, u64 lo, u64 hi) {
    const StructureReport st = analyze(as_normalized(spec_from_py(spec)));
    const auto cls = classify_primes(st, lo, hi);
    return py::make_tuple(cls.pi_plus, cls.pi_minus, cls.skipped);
  }, py::arg("spec"), py::arg("lo"), py::arg("hi"));

  m.def("count_constant_sign", [](u64 p, py::dict spec, int eps) {
    return count_constant_sign(ResidueClassifier(p), as_normalized(spec_from_py(spec)), eps);
  }, py::arg("p"), py::arg("spec"), py::arg("eps"));

  m.def("count_pattern", [](u64 p, std::vector<i64> z, std::vector<int> eps) {
    return count_pattern(ResidueClassifier(p), z, eps);
  }, py::arg("p"), py::arg("Z"), py::arg("eps"));

  m.def("count_support", [](u64 p, std::vector<i64> z, const std::string& side) {
    return count_support(ResidueClassifier(p), z, side_from(side));
  }, py::arg("p"), py::arg("Z"), py::arg("side"));

  m.def("count_eta", [](u64 p, py::dict spec, std::vector<int> eta) {
    return count_eta(ResidueClassifier(p), as_normalized(spec_from_py(spec)), eta);
  }, py::arg("p"), py::arg("spec"), py::arg("eta"));

  m.def("count_ap1_pattern", [](u64 p, i64 a, i64 b, i64 s, std::vector<int> eps) {
    return count_ap1_pattern(ResidueClassifier(p), a, b, s, eps);
  }, py::arg("p"), py::arg("a"), py::arg("b"), py::arg("s"), py::arg("eps"));

  m.def("count_ap1_support", [](u64 p, i64 a, i64 b, i64 s, const std::string& side) {
    return count_ap1_support(ResidueClassifier(p), a, b, s, side_from(side));
  }, py::arg("p"), py::arg("a"), py::arg("b"), py::arg("s"), py::arg("side"));

  m.def("stats", [](u64 p, i64 a, i64 b) {
    const ResidueClassifier c(p);
    py::dict out;
    out["s0_plus"] = stat_s0(c, a, b, SupportSide::residue);
    out["s0_minus"] = stat_s0(c, a, b, SupportSide::nonresidue);
    out["s1_plus"] = stat_s1(c, a, b, SupportSide::residue);
    out["s1_minus"] = stat_s1(c, a, b, SupportSide::nonresidue);
    return out;
  }, py::arg("p"), py::arg("a"), py::arg("b"));

  m.def("stat_n0", [](u64 p, i64 a, i64 b, std::vector<int> eps) {
    return stat_n0(ResidueClassifier(p), a, b, eps);
  }, py::arg("p"), py::arg("a"), py::arg("b"), py::arg("eps"));

  m.def("q0_search", [](i64 a, i64 b, const std::string& side, i64 s, u64 cap) {
    return q0_search(a, b, side_from(side), s, cap);
  }, py::arg("a"), py::arg("b"), py::arg("side"), py::arg("s"), py::arg("prime_cap") = 100000);

  m.def("char_sum", [](u64 p, std::vector<i64> shifts, std::optional<u64> range_end) {
    const CharSumResult r = char_sum(ResidueClassifier(p), shifts, range_end);
    py::dict out;
    out["p"] = r.p;
    out["degree"] = r.degree;
    out["value"] = r.value;
    out["bound"] = r.bound;
    out["within_bound"] = r.within_bound;
    out["range_end"] = r.range_end ? py::cast(*r.range_end) : py::none().cast<py::object>();
    return out;
  }, py::arg("p"), py::arg("shifts"), py::arg("range_end") = std::nullopt);

  m.def("predict", [](py::dict target) { return prediction_to_py(predict(target_from_py(target))); },
        py::arg("target"));

  m.def("verify_range", [](py::dict target, u64 lo, u64 hi, bool all, int per_decade, int workers) {
    const Target t = target_from_py(target);
    const VerifyReport rep = verify_range(t, lo, hi, {all, per_decade}, workers);
    py::list rows;
    for (const VerifyRow& r : rep.rows) {
      py::dict row;
      row["p"] = r.p;
      row["count"] = r.count;
      row["predicted"] = r.predicted;
      row["error"] = r.error;
      row["bound"] = r.bound;
      row["pass"] = r.pass;
      row["pi_class"] = pi_class_name(r.pi_class);
      rows.append(row);
    }
    py::dict out;
    out["prediction"] = prediction_to_py(rep.prediction);
    out["rows"] = rows;
    out["summary"] = json_to_py(io::verify_summary_json(t, rep));
    return out;
  }, py::arg("target"), py::arg("lo"), py::arg("hi"), py::arg("all") = false,
     py::arg("per_decade") = 200, py::arg("workers") = 1);

  m.def("fixture", [](const std::string& name, int k, i64 s, i64 q, i64 r, std::vector<i64> gaps) {
    FixtureParams params;
    params.k = k;
    params.s = s;
    params.q = q;
    params.r = r;
    params.gaps = std::move(gaps);
    const Fixture f = make_fixture(name, params);
    py::dict out;
    out["spec"] = json_to_py(io::family_to_json(f.spec));
    out["expected"] = json_to_py(io::fixture_expected_to_json(f));
    return out;
  }, py::arg("name"), py::arg("k") = 0, py::arg("s") = 0, py::arg("q") = 0, py::arg("r") = 0,
     py::arg("gaps") = std::vector<i64>{});
}
