"""Built-in coupling pairs shipped as package data."""
