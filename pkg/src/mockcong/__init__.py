"""Coefficients, congruence scans and necessary-condition verdicts for mock theta
functions and eta-quotients, with exact Dedekind-sum and multiplier machinery."""

__version__ = "0.1.0"
