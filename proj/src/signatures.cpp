#include "qrap/signatures.hpp"

#include <stdexcept>

namespace qrap {

const char* signature_class_name(SignatureClass c) {
  switch (c) {
    case SignatureClass::positive: return "positive";
    case SignatureClass::non_positive: return "non_positive";
    case SignatureClass::not_allowable: return "not_allowable";
  }
  return "?";
}

namespace {

SignatureReport signature_impl(u64 p, const StructureReport& r, const int* eta) {
  if (r.lambda.empty()) throw std::domain_error("signature: lambda is empty, signature undefined");
  if (p < 3 || (p & 1) == 0) throw std::invalid_argument("signature: p must be an odd prime");

  SignatureReport rep;
  rep.p = p;
  for (i64 b : r.B) {
    if (static_cast<u64>(b) % p == 0) {
      rep.allowable = false;
      rep.cls = SignatureClass::not_allowable;
      return rep;
    }
  }
  rep.allowable = true;

  // chi_p(b_i) once per row; products over index sets stay exact this way.
  std::vector<int> chi_b(r.B.size());
  for (std::size_t i = 0; i < r.B.size(); ++i) chi_b[i] = chi_euler(p, r.B[i]);

  bool all_positive = true;
  for (const auto& index_set : r.lambda) {
    int v = 1;
    for (int i : index_set) {
      v *= chi_b[i - 1];
      if (eta != nullptr) v *= eta[i - 1];
    }
    rep.values.push_back(v);
    if (v != 1) all_positive = false;
  }
  rep.cls = all_positive ? SignatureClass::positive : SignatureClass::non_positive;
  return rep;
}

}  // namespace

SignatureReport signature_of(u64 p, const StructureReport& r) { return signature_impl(p, r, nullptr); }

SignatureReport signature_of(u64 p, const StructureReport& r, std::span<const int> eta) {
  if (eta.size() != r.B.size()) throw std::invalid_argument("signature: eta must have one sign per row");
  for (int v : eta) {
    if (v != 1 && v != -1) throw std::invalid_argument("signature: eta entries must be +-1");
  }
  return signature_impl(p, r, eta.data());
}

PrimeClassification classify_primes(const StructureReport& r, u64 lo, u64 hi,
                                    std::optional<std::vector<int>> eta, u64 cap) {
  PrimeClassification out;
  for (u64 p : primes_in_range(std::max<u64>(lo, 3), hi, cap)) {
    if ((p & 1) == 0) continue;
    const SignatureReport rep = eta ? signature_of(p, r, *eta) : signature_of(p, r);
    switch (rep.cls) {
      case SignatureClass::positive: out.pi_plus.push_back(p); break;
      case SignatureClass::non_positive: out.pi_minus.push_back(p); break;
      case SignatureClass::not_allowable: out.skipped.push_back(p); break;
    }
  }
  return out;
}

}  // namespace qrap
