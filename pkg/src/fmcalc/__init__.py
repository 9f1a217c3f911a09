"""fmcalc: exact computer algebra for classifying rings of typical formal
modules over p-adic number rings, the comparison maps between them, and
nonrealizability obstruction certificates for graded modules."""

__version__ = "1.0.0"
