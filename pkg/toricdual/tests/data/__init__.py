"""Input files used by the tests."""
