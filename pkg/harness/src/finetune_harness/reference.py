"""Published reference results this harness aims to reproduce.

Accuracy and timing per training-set configuration, the detailed
class-wise scores for the best (top-75%) configuration, and the ablation
accuracies without vocabulary augmentation. Timings are hardware-specific,
so only relative trends are meaningful targets; the accuracy tolerance
used by the reproduction acceptance run is +/- 0.01.
"""

# accuracy and total training seconds, with vocabulary augmentation
AUGMENTED_RUNS = {
    "full": {"accuracy": 0.9627, "seconds": 1420.13},
    "top80": {"accuracy": 0.9645, "seconds": 1086.69},
    "top75": {"accuracy": 0.9667, "seconds": 1039.14},
    "top70": {"accuracy": 0.9637, "seconds": 973.68},
    "top65": {"accuracy": 0.9641, "seconds": 919.93},
    "top60": {"accuracy": 0.9635, "seconds": 870.61},
    "top50": {"accuracy": 0.9586, "seconds": 743.96},
}

# detailed class-wise scores at the top-75% configuration
TOP75_CLASSWISE = {
    "per_class": {
        "0": {"precision": 0.9044, "recall": 0.8968, "f1": 0.9005},
        "1": {"precision": 0.9792, "recall": 0.9808, "f1": 0.9800},
    },
    "macro_f1": 0.9403,
    "weighted_f1": 0.9667,
}

# accuracy without vocabulary augmentation (ablation), same setup
NON_AUGMENTED_RUNS = {
    "full": {"accuracy": 0.9627, "seconds": 1420.13},
    "top80": {"accuracy": 0.9613, "seconds": 1066.0},
    "top70": {"accuracy": 0.9631, "seconds": 955.10},
    "top60": {"accuracy": 0.958, "seconds": 854.04},
    "top50": {"accuracy": 0.955, "seconds": 729.0},
}

ACCURACY_TOLERANCE = 0.01

# time at top-75% relative to full data (roughly 0.73 in the reference runs)
TOP75_TIME_RATIO_BOUND = 0.80
