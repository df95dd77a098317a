"""Computations on the tower: ramification ledger, point counts and zeta."""
