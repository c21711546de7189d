#pragma once

#include <complex>
#include <fstream>
#include <sstream>
#include <string>

#include "qlssmash/criteria.hpp"
#include "qlssmash/job.hpp"

namespace qls::test {

inline std::string example_path(const std::string& name) {
  return std::string(QLS_DATA_DIR) + "/examples/" + name + ".json";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline JobConfig load_config(const std::string& name) { return parse_config(read_file(example_path(name))); }

inline ModuleAlgebra load_module(const std::string& name) {
  const JobConfig cfg = load_config(name);
  return ModuleAlgebra(Bosonization::create(cfg.datum), *cfg.action);
}

inline ValidatedAction load_validated(const std::string& name) { return ValidatedAction(load_module(name)); }

/// Every bundled config that carries a valid action.
inline const std::vector<std::string>& valid_examples() {
  static const std::vector<std::string> names = {"not_semiprime_n3", "semiprime_n3",    "semiprime_n5",     "semiprime_not_prime_n3",
                                                 "prime_4var", "sweedler", "group_only"};
  return names;
}

inline std::complex<long double> numeric(const CycNumber& a) {
  const long double pi = 3.141592653589793238462643383279502884L;
  std::complex<long double> z = 0;
  const auto& c = a.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const long double arg = 2 * pi * static_cast<long double>(k) / a.conductor();
    z += static_cast<long double>(c[k].get_d()) * std::polar(1.0L, arg);
  }
  return z;
}

inline Monomial mono(std::initializer_list<int> e) { return Monomial(e); }

inline QasElement u(std::initializer_list<int> e, const CycNumber& c = CycNumber(1)) {
  return QasElement::term(Monomial(e), c);
}

inline CycNumber zeta(long n, long k = 1) { return CycNumber::root_of_unity(n, k); }

}  // namespace qls::test
