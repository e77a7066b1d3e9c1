"""Services package: numerics, frame constructions, channel simulation and extreme value analysis."""
