#ifndef RNLS_RESONANCE_HPP
#define RNLS_RESONANCE_HPP

#include <compare>
#include <vector>

#include "rnls/types.hpp"

namespace rnls {

/// An index triple (j1, j2, j3) with j1 - j2 + j3 = j and j1^2 - j2^2 + j3^2 = j^2.
struct ResonanceTriple {
  int j1 = 0;
  int j2 = 0;
  int j3 = 0;

  auto operator<=>(const ResonanceTriple&) const = default;
};

/// Symmetric truncation |j| <= J of the mode lattice.
class ModeBand {
public:
  /// Largest supported radius; squares of in-band indices stay far from int overflow.
  static constexpr int kMaxRadius = 1 << 15;

  ModeBand() = default;
  explicit ModeBand(int radius);

  int radius() const { return radius_; }
  int size() const { return 2 * radius_ + 1; }
  bool contains(int j) const { return j >= -radius_ && j <= radius_; }
  /// Position of mode j in a [-J, J] ordered container.
  int slot(int j) const { return j + radius_; }
  int mode_at(int slot) const { return slot - radius_; }

  bool operator==(const ModeBand&) const = default;

private:
  int radius_ = 0;
};

/// Does the triple satisfy both resonance constraints for target j?
bool is_resonant(const ResonanceTriple& t, int j);

/// Exhaustive search over the band; triples in lexicographic order.
std::vector<ResonanceTriple> enumerate_resonances(int j, const ModeBand& band);

/// {(j,k,k)} united with {(k,k,j)} for |k| <= J, (j,j,j) once, lexicographic order.
std::vector<ResonanceTriple> closed_form_resonances(int j, const ModeBand& band);

/// <j>^2 times the sum over in-band resonant triples of <j1>^-2 <j2>^-2 <j3>^-2.
double kernel_sum(int j, const ModeBand& band);

} // namespace rnls

#endif // RNLS_RESONANCE_HPP
