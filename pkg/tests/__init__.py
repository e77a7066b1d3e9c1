"""Tests package for the Language Learning Flashcard App."""
