"""Dialogue simulation core: ontology, acts, language channel, tracking, learners, game, experiments."""
