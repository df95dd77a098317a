"""Test suite for the astower package."""
