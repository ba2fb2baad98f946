"""2D acoustic scattering toolkit for polygonal obstacles.

Forward sound-soft Helmholtz solver (combined-field boundary integral
equation), far-field extraction, closed-form disk reference solutions,
nodal-set decomposition and ordering, reflection/odd-symmetry checks,
flat-segment detection, and boundary-to-infinity path construction.
"""

__version__ = "0.1.0"
