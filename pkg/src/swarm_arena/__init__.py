"""Fair-comparison benchmarking of population-based metaheuristics."""
__version__ = "0.1.0"
