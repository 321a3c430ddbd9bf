"""Exact verification toolkit for deformed-denominator character identities.

Modules:
  laurent    -- exact sparse Laurent polynomials in z_1..z_r, t, q
  rootdata   -- weights, Weyl-group sums, the deformed denominator, characters
  gtpatterns -- strict Gelfand-Tsetlin patterns, statistics, pattern sums
  tableaux   -- symplectic shifted tableaux and ribbon-strip statistics
  padic      -- exponential sums at a prime, decorated arrays, Omega identities
  whittaker  -- prime-power coefficient recursion and its consistency checks
  cli        -- verify / enumerate / coeff subcommands
"""

__version__ = "1.0.0"
