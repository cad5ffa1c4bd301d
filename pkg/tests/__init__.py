"""Test package for dna_ensembles."""
