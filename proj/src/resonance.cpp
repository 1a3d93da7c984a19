#include "rnls/resonance.hpp"

#include <string>

#include "rnls/types.hpp"

namespace rnls {

ModeBand::ModeBand(int radius) : radius_(radius) {
  if (radius < 0 || radius > kMaxRadius) {
    throw DomainError("mode band radius must lie in [0, " + std::to_string(kMaxRadius) +
                      "], got " + std::to_string(radius));
  }
}

namespace {

void require_in_band(int j, const ModeBand& band) {
  if (!band.contains(j)) {
    throw DomainError("target mode " + std::to_string(j) + " outside band |j| <= " +
                      std::to_string(band.radius()));
  }
}

} // namespace

bool is_resonant(const ResonanceTriple& t, int j) {
  const long long a = t.j1, b = t.j2, c = t.j3, d = j;
  return a - b + c == d && a * a - b * b + c * c == d * d;
}

std::vector<ResonanceTriple> enumerate_resonances(int j, const ModeBand& band) {
  require_in_band(j, band);
  const int J = band.radius();
  std::vector<ResonanceTriple> out;
  // j3 is fixed by the linear constraint once (j1, j2) are chosen.
  for (int j1 = -J; j1 <= J; ++j1) {
    for (int j2 = -J; j2 <= J; ++j2) {
      const int j3 = j - j1 + j2;
      if (!band.contains(j3)) continue;
      const ResonanceTriple t{j1, j2, j3};
      if (is_resonant(t, j)) out.push_back(t);
    }
  }
  return out;
}

std::vector<ResonanceTriple> closed_form_resonances(int j, const ModeBand& band) {
  require_in_band(j, band);
  const int J = band.radius();
  std::vector<ResonanceTriple> out;
  out.reserve(static_cast<std::size_t>(2 * band.size() - 1));
  // Lexicographic order: (k,k,j) for k < j, then the full (j,k,k) row, then (k,k,j) for k > j.
  for (int k = -J; k < j; ++k) out.push_back({k, k, j});
  for (int k = -J; k <= J; ++k) out.push_back({j, k, k});
  for (int k = j + 1; k <= J; ++k) out.push_back({k, k, j});
  return out;
}

double kernel_sum(int j, const ModeBand& band) {
  double sum = 0.0;
  for (const auto& t : closed_form_resonances(j, band)) {
    sum += 1.0 / (bracket_sq<double>(t.j1) * bracket_sq<double>(t.j2) * bracket_sq<double>(t.j3));
  }
  return bracket_sq<double>(j) * sum;
}

} // namespace rnls
