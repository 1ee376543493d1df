"""Closed-form bounds: thermal states and tensor copies.

Above a Hamiltonian-dependent temperature every Gibbs state has eigenvalue
ratio at most (l+1)/(l-1) and is therefore separable across every cut whose
smaller side has dimension at most l.  Conversely, enough tensor copies of
any non-maximally-mixed state always escape the absolutely-PPT set.
"""

import math

from specsep import gibbs_spectrum, spectral_ratio
from specsep.criteria import copy_bound, gibbs_threshold


def main():
    energies = [-1.0, -0.2, 0.4, 1.0]
    h_norm = max(abs(e) for e in energies)
    t_star = gibbs_threshold(h_norm, l=2)
    print("entanglement-free threshold for ||H|| = %.3g, l = 2: T* = %.6g"
          % (h_norm, t_star))
    for t in (0.5 * t_star, t_star, 2.0 * t_star):
        s = gibbs_spectrum(energies, t)
        print("  T = %8.4f  ratio = %.4f  (<= 3 certifies)" %
              (t, spectral_ratio(s)))

    print()
    for r in (1.5, 2.0, 3.0, 5.0, 10.0):
        n = copy_bound(r)
        print("ratio %4.4g: %d copies certified to leave the absolutely-PPT set "
              "(R^n = %.4g > R + 2 sqrt(R) = %.4g)"
              % (r, n, r**n, r + 2 * math.sqrt(r)))


if __name__ == "__main__":
    main()
