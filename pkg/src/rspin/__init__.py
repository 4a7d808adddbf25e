"""Exact closed Lambda_r-Frobenius algebras and the r-spin invariants they assign."""
