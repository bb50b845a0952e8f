"""Reference numbers for the trine / two-basis qubit example.

``TRINE_MUB_TABLE`` holds processed hardware frequencies for three trine
states measured with the equal mixture of the z and x bases; the
``REFERENCE_*`` arrays are the range reported for that table, given to two
or three decimals.  ``IDEAL_*`` is the range of the noiseless measurement.
"""
import numpy as np

TRINE_MUB_TABLE = np.array([
    [0.48, 0.05, 0.24, 0.23],
    [0.21, 0.32, 0.42, 0.05],
    [0.17, 0.33, 0.11, 0.39],
])

REFERENCE_Q = np.array([
    [0.038, -0.036, 0.000, -0.001],
    [-0.036, 0.034, 0.002, 0.000],
    [0.000, 0.002, 0.033, -0.034],
    [-0.001, 0.000, -0.034, 0.036],
])
REFERENCE_T = np.array([0.29, 0.23, 0.26, 0.22])

IDEAL_Q = np.array([
    [1, -1, 0, 0],
    [-1, 1, 0, 0],
    [0, 0, 1, -1],
    [0, 0, -1, 1],
]) / 16
IDEAL_T = np.full(4, 0.25)
