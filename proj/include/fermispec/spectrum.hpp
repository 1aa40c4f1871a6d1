#ifndef FERMISPEC_SPECTRUM_HPP
#define FERMISPEC_SPECTRUM_HPP

#include <string>
#include <vector>

namespace fermispec {

enum class SpectrumSource { galerkin, normal_form };

std::string to_string(SpectrumSource s);

/// Sorted list of eigenvalues below some cutoff, tagged with how they were
/// obtained so tables from the two pipelines can be compared or overlaid.
struct SpectrumTable {
  std::vector<double> values;  ///< ascending, duplicates allowed
  SpectrumSource source = SpectrumSource::galerkin;
};

struct SpectrumDistance {
  double linf = 0;
  double l2 = 0;
  int count = 0;
};

/// Truncate both tables at `energy`, pair by sorted rank up to the shorter
/// length, and report the norms of the paired differences.  Throws if the
/// overlap is empty (distinguishable from a genuine zero error).
SpectrumDistance compare_spectra(const SpectrumTable& a,
                                 const SpectrumTable& b, double energy);

}  // namespace fermispec

#endif
