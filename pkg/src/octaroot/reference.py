"""Published reference values used by the reproduction checks.

Error entries are ``(mantissa, exponent)`` exactly as printed, meaning
``|x_n - x*| = mantissa * 10**exponent`` with the mantissa in [0.1, 1).
"""

# method -> function -> ((m, k) for n = 1, 2, 3), COC, ACOC
REFERENCE_ERRORS = {
    "f1": {
        "m1": ((("0.140", -3), ("0.583", -28), ("0.362", -223)), "8.0000", "7.9999"),
        "m2": ((("0.318", -3), ("0.562", -25), ("0.531", -199)), "8.0000", "8.0000"),
        "m3": ((("0.721", -4), ("0.230", -30), ("0.252", -242)), "8.0000", "7.9999"),
        "m4": ((("0.893", -4), ("0.126", -30), ("0.200", -245)), "8.0000", "7.9999"),
        "m5": ((("0.753", -4), ("0.619", -31), ("0.128", -247)), "8.0000", "7.9999"),
        "m6": ((("0.347", -3), ("0.471", -25), ("0.546", -200)), "8.0000", "7.9999"),
    },
    "f2": {
        "m1": ((("0.526", -4), ("0.534", -37), ("0.599", -301)), "8.0000", "7.9999"),
        "m2": ((("0.113", -3), ("0.263", -33), ("0.226", -270)), "8.0000", "7.9999"),
        "m3": ((("0.157", -3), ("0.119", -33), ("0.138", -274)), "8.0000", "7.9998"),
        "m4": ((("0.763", -4), ("0.540", -35), ("0.342", -284)), "8.0000", "7.9999"),
        "m5": ((("0.871", -4), ("0.134", -34), ("0.438", -281)), "8.0000", "7.9999"),
        "m6": ((("0.411", -3), ("0.377", -29), ("0.189", -237)), "8.0000", "7.9999"),
    },
    "f3": {
        "m1": ((("0.235", -7), ("0.393", -60), ("0.239", -482)), "8.0000", "7.9999"),
        "m2": ((("0.298", -7), ("0.373", -59), ("0.222", -474)), "8.0000", "7.9999"),
        "m3": ((("0.614", -8), ("0.328", -65), ("0.217", -523)), "8.0000", "8.0000"),
        "m4": ((("0.388", -8), ("0.254", -67), ("0.877", -541)), "8.0000", "7.9999"),
        "m5": ((("0.175", -8), ("0.154", -70), ("0.5821", -567)), "8.0000", "8.0000"),
        "m6": ((("0.554", -8), ("0.426", -66), ("0.528", -531)), "8.0000", "8.0000"),
    },
    "f4": {
        "m1": ((("0.286", -8), ("0.108", -68), ("0.460", -552)), "8.0000", "8.0000"),
        "m2": ((("0.602", -8), ("0.181", -65), ("0.121", -525)), "8.0000", "8.0000"),
        "m3": ((("0.433", -8), ("0.134", -66), ("0.116", -534)), "8.0000", "7.9999"),
        "m4": ((("0.327", -10), ("0.369", -84), ("0.967", -676)), "8.0000", "7.9999"),
        "m5": ((("0.642", -10), ("0.101", -81), ("0.389", -656)), "8.0000", "7.9999"),
        "m6": ((("0.281", -8), ("0.341", -68), ("0.161", -547)), "8.0000", "8.0000"),
    },
}

# poly -> method -> (I/P, NC %, I_C/C)
REFERENCE_BASIN_STATS = {
    "p1": {
        "m1": (2.53, 0.244, 2.50),
        "m2": (2.29, 0.00798, 2.28),
        "m3": (2.20, 0.195, 2.18),
        "m4": (2.17, 0.195, 2.15),
        "m5": (2.13, 0.195, 2.10),
        "m6": (6.01, 70.9, 2.09),
    },
    "p2": {
        "m1": (3.54, 0.798, 3.45),
        "m2": (3.10, 0.340, 3.06),
        "m3": (2.88, 0.0, 2.88),
        "m4": (2.82, 0.00456, 2.82),
        "m5": (2.73, 0.0, 2.73),
        "m6": (4.32, 27.6, 2.81),
    },
    "p3": {
        "m1": (3.88, 3.57, 3.47),
        "m2": (3.57, 2.19, 3.31),
        "m3": (2.99, 0.0122, 2.99),
        "m4": (2.94, 0.0334, 2.94),
        "m5": (2.82, 0.0, 2.82),
        "m6": (3.28, 5.46, 2.99),
    },
    "p4": {
        "m1": (6.85, 24.7, 4.17),
        "m2": (6.48, 22.0, 4.07),
        "m3": (4.07, 0.888, 3.97),
        "m4": (4.21, 1.84, 4.01),
        "m5": (3.95, 4.40, 3.44),
        "m6": (4.45, 20.1, 3.56),
    },
    "p5": {
        "m1": (7.27, 27.0, 4.42),
        "m2": (7.00, 25.2, 4.30),
        "m3": (4.81, 3.36, 4.45),
        "m4": (5.07, 5.71, 4.47),
        "m5": (4.59, 7.04, 3.80),
        "m6": (5.03, 21.4, 4.02),
    },
    "p6": {
        "m1": (7.36, 24.4, 4.90),
        "m2": (6.96, 21.7, 4.73),
        "m3": (4.69, 2.33, 4.44),
        "m4": (4.89, 4.03, 4.46),
        "m5": (4.44, 3.98, 4.01),
        "m6": (5.26, 11.9, 4.70),
    },
}

# parameter triples of the family compared on p6
SWEEP_TRIPLES = (("-1", "-1", "-1"), ("-1", "-1", "-1+1i"), ("-1/2", "-1", "-2+1i"))
