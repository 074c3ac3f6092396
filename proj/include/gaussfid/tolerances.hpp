#ifndef GAUSSFID_TOLERANCES_HPP
#define GAUSSFID_TOLERANCES_HPP

namespace gaussfid {

/// Numerical thresholds used throughout the library. Defaults suit double
/// precision with well-conditioned inputs; every entry may be overridden.
struct Tolerances {
  double symmetry = 1e-10;       ///< max |A - A^T|, relative to max|A|
  double eigen = 1e-9;           ///< slack on A + iJ >= 0 and d_j >= 1
  double pure = 1e-8;            ///< |d_j - 1| below which a mode is pure
  double symplectic = 1e-9;      ///< max |S^T J S - J|, relative to max(1, max|S|^2)
  double reconstruction = 1e-8;  ///< decomposition residual, relative to max|A|
  double imaginary = 1e-8;       ///< discarded imaginary part of O, relative to max|O|
  double fidelity = 1e-9;        ///< |F - 1| below which F snaps to 1
  double cross_check = 1e-8;     ///< agreement between independent formulas
  double max_condition = 1e12;   ///< largest accepted condition number
};

} // namespace gaussfid

#endif // GAUSSFID_TOLERANCES_HPP
