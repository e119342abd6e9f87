"""Discrete-event simulator: traffic, MAC protocols and the event engine."""
