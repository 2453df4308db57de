"""Chevalley-Eilenberg cohomology of Lie superalgebras in exact arithmetic."""
