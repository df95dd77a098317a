"""AsTower: ramification and rational points of an Artin-Schreier tower over F_2."""
