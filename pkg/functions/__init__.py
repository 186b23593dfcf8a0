# Exact and floating-point kernels
