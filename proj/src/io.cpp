#include "qrap/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qrap::io {

namespace {

std::vector<i64> int_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw std::invalid_argument("family spec: field '" + field + "' must be an array");
  std::vector<i64> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) {
      throw std::invalid_argument("family spec: field '" + field + "' must hold integers");
    }
    out.push_back(v.get<i64>());
  }
  return out;
}

void check_fields(const json& j, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw std::invalid_argument("family spec: unknown field '" + key + "'");
  }
  for (const auto& key : allowed) {
    if (!j.contains(key)) throw std::invalid_argument("family spec: missing field '" + key + "'");
  }
}

}  // namespace

json family_to_json(const FamilySpec& f) {
  json j;
  switch (f.kind) {
    case FamilyKind::shift:
      j["kind"] = "shift";
      j["Z"] = f.Z;
      break;
    case FamilyKind::ap:
      j["kind"] = "ap";
      j["a"] = f.a;
      j["b"] = f.b;
      j["s"] = f.s;
      break;
    case FamilyKind::normalized:
      j["kind"] = "normalized";
      j["B"] = f.B;
      j["S"] = f.S;
      break;
  }
  return j;
}

FamilySpec family_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("family spec: document must be an object");
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("family spec: missing string field 'kind'");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "shift") {
    check_fields(j, {"kind", "Z"});
    return FamilySpec::shift_family(int_list(j["Z"], "Z"));
  }
  if (kind == "ap") {
    check_fields(j, {"kind", "a", "b", "s"});
    if (!j["s"].is_number_integer()) throw std::invalid_argument("family spec: field 's' must be an integer");
    return FamilySpec::ap_family(int_list(j["a"], "a"), int_list(j["b"], "b"), j["s"].get<i64>());
  }
  if (kind == "normalized") {
    check_fields(j, {"kind", "B", "S"});
    if (!j["S"].is_array()) throw std::invalid_argument("family spec: field 'S' must be an array of arrays");
    std::vector<std::vector<i64>> rows;
    for (const auto& row : j["S"]) rows.push_back(int_list(row, "S"));
    return FamilySpec::normalized_family(int_list(j["B"], "B"), std::move(rows));
  }
  throw std::invalid_argument("family spec: kind must be one of shift|ap|normalized, got '" + kind + "'");
}

FamilySpec load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("spec file " + path + ": " + e.what());
  }
  return family_from_json(j);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json structure_to_json(const StructureReport& r) {
  json j;
  j["B"] = r.B;
  j["alpha"] = r.alpha;
  j["bmax"] = r.bmax;
  j["e"] = r.e;
  j["branch"] = branch_name(r.branch);
  json kmax = json::array();
  for (const auto& [kset, tk] : r.kmax) {
    json entry;
    entry["K"] = kset;
    json values = json::array();
    for (const Rational& t : tk) values.push_back(t.str());
    entry["T"] = values;
    kmax.push_back(entry);
  }
  j["kmax"] = kmax;
  j["lambda"] = r.lambda;
  return j;
}

json signature_to_json(const SignatureReport& r) {
  json j;
  j["p"] = r.p;
  j["allowable"] = r.allowable;
  j["class"] = signature_class_name(r.cls);
  j["values"] = r.values;
  return j;
}

json fixture_expected_to_json(const Fixture& f) {
  json j;
  j["name"] = f.name;
  j["alpha"] = f.expected.alpha;
  j["e"] = f.expected.e;
  j["exponent"] = f.expected.exponent;
  j["branch"] = branch_name(f.expected.branch);
  j["coefficient"] = f.expected.coefficient.str();
  return j;
}

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string count_csv(std::span<const CountRecord> records) {
  std::ostringstream os;
  os << "p,mode,eps_or_eta,count\n";
  for (const CountRecord& r : records) {
    os << r.p << ',' << r.mode << ',' << r.signs << ',' << r.count << '\n';
  }
  return os.str();
}

std::string weil_csv(std::span<const CharSumResult> results) {
  std::ostringstream os;
  os << "p,d,N,value,bound,within_bound\n";
  for (const CharSumResult& r : results) {
    os << r.p << ',' << r.degree << ',';
    if (r.range_end) {
      os << *r.range_end;
    } else {
      os << "complete";
    }
    os << ',' << r.value << ',' << format_sig6(r.bound) << ',' << (r.within_bound ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string verify_csv(const VerifyReport& report) {
  std::ostringstream os;
  os << "p,count,predicted,error,bound,pass,pi_class\n";
  for (const VerifyRow& r : report.rows) {
    os << r.p << ',' << r.count << ',' << format_sig6(r.predicted) << ',' << format_sig6(r.error)
       << ',' << format_sig6(r.bound) << ',' << (r.pass ? 1 : 0) << ',' << pi_class_name(r.pi_class)
       << '\n';
  }
  return os.str();
}

json verify_summary_json(const Target& t, const VerifyReport& report) {
  json j;
  j["target"] = target_description(t);
  j["coefficient"] = report.prediction.coefficient.str();
  j["valid_on"] = report.prediction.valid_on == ValidOn::pi_plus_only ? "pi_plus_only" : "all_primes";
  j["zero_on_pi_minus"] = report.prediction.zero_on_pi_minus;
  j["bound_form"] =
      report.prediction.bound_form == BoundForm::sqrt_p ? "c*sqrt(p)" : "c*sqrt(p)*log(p)";
  j["bound_constant"] = report.prediction.bound_constant;
  if (report.prediction.structure) j["branch"] = branch_name(report.prediction.structure->branch);
  j["n_primes"] = report.summary.n_primes;
  j["n_plus"] = report.summary.n_plus;
  j["n_minus"] = report.summary.n_minus;
  j["n_skipped"] = report.summary.n_skipped;
  j["max_ratio"] = report.summary.max_ratio;
  j["violations"] = report.summary.violations;
  j["pi_minus_all_zero"] = report.summary.pi_minus_all_zero;
  return j;
}

}  // namespace qrap::io
