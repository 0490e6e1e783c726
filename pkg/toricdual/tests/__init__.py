"""Unit and regression tests for toricdual."""
