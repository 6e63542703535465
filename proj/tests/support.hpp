#pragma once

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <tropex/rational.hpp>
#include <tropex/semiring.hpp>
#include <tropex/strata_calculus.hpp>

namespace tropex::testing {

inline Rational random_rational(std::mt19937& rng, int numRange = 20, int denRange = 6) {
  std::uniform_int_distribution<int> num(-numRange, numRange), den(1, denRange);
  return make_rational(num(rng), den(rng));
}

inline GaussianRational random_gaussian(std::mt19937& rng) {
  return {random_rational(rng), random_rational(rng)};
}

// Exponents from a small set so that ties occur often.
inline ExplodedValue random_value(std::mt19937& rng) {
  std::uniform_int_distribution<int> e(-2, 2);
  return {random_gaussian(rng), make_rational(e(rng), 2)};
}

// Random polynomial in n smooth coordinates and their conjugates, total degree <= maxDegree.
inline SmoothPoly random_smooth_poly(std::mt19937& rng, std::size_t n, unsigned maxDegree, int terms) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<unsigned> power(0, 2);
  SmoothPoly f(n);
  for (int k = 0; k < terms; ++k) {
    SmoothPoly::Exponent e(2 * n, 0);
    unsigned deg = 0;
    for (auto& x : e) {
      if (deg >= maxDegree) break;
      x = std::min(power(rng), maxDegree - deg);
      deg += x;
    }
    std::shuffle(e.begin(), e.end(), rng);
    f.add_term(e, GaussianRational(Rational(coeff(rng)), Rational(coeff(rng))));
  }
  return f;
}

struct RunResult {
  int status = -1;
  std::string out;
};

// Runs a shell command, capturing stdout.
inline RunResult run_command(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

}  // namespace tropex::testing
