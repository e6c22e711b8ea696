"""Fine-tuning harness: extends a pretrained uncased BERT tokenizer/model
with an augmented vocabulary file and fine-tunes for binary sequence
classification on the filtered training CSV, emitting a metrics report in
the same JSON schema as the upstream pipeline.
"""

__version__ = "0.1.0"
