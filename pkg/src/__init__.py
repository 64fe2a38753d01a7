"""Source modules for the Heisenberg spectra pipeline."""
