"""lexfilter: TF-IDF training-set pruning and WordPiece vocabulary
augmentation for binary hate/offensive-speech classification pipelines.
"""

__version__ = "0.1.0"
