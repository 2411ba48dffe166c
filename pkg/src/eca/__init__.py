"""Event causality augmentation (ECA) pipeline.

Builds an event causal graph from external knowledge bases, classifies
documents to event types without triggers, augments inputs with templated
causal features, and extracts typed argument spans via sequence labeling.
"""

__version__ = "0.1.0"
