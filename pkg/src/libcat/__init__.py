"""libcat: a workbench for categorizing software libraries along the
24 PyPI Topic classifiers, with assessment, arbitration, vulnerability
enrichment, inter-rater statistics, and dataset export."""

__version__ = "0.1.0"
