"""flowcode: a bidirectional flowchart/code toolchain.

Builds flowchart/code corpora, emits sequence encodings, generates
augmentation and masked-pretraining data, renders and recognizes
flowchart images, and scores generated code with BLEU, CodeBLEU and
exact match.
"""

__version__ = "0.1.0"
