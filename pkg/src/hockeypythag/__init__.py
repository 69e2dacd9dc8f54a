"""Pythagorean won-loss expectation for hockey from translated-Weibull goal models."""
