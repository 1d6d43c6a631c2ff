# ogaprox: OGAProx saddle-point iteration with convergence diagnostics
__version__ = "0.1.0"
