"""
Published reference values of every table the `table` command regenerates,
keyed by Sharpe ratio (variance tables) or AR(1) coefficient (compounding
tables). Cells are printed to 3 decimals, the differences in percentage
points to 2.
"""

BIAS_N = [3, 6, 12, 24, 36, 48, 60, 120]
BIAS = [1.772, 1.189, 1.075, 1.034, 1.022, 1.016, 1.013, 1.006]

VARIANCE_N = [12, 24, 36, 48, 60, 125, 250, 500]

SIGMA_1 = {
    0.5: [0.306, 0.217, 0.177, 0.153, 0.137, 0.095, 0.067, 0.047],
    0.75: [0.327, 0.231, 0.189, 0.163, 0.146, 0.101, 0.072, 0.051],
    1: [0.354, 0.250, 0.204, 0.177, 0.158, 0.110, 0.077, 0.055],
    1.25: [0.385, 0.272, 0.222, 0.193, 0.172, 0.119, 0.084, 0.060],
    1.5: [0.421, 0.298, 0.243, 0.210, 0.188, 0.130, 0.092, 0.065],
    1.75: [0.459, 0.325, 0.265, 0.230, 0.205, 0.142, 0.101, 0.071],
    2: [0.500, 0.354, 0.289, 0.250, 0.224, 0.155, 0.110, 0.077],
    2.25: [0.542, 0.384, 0.313, 0.271, 0.243, 0.168, 0.119, 0.084],
    2.5: [0.586, 0.415, 0.339, 0.293, 0.262, 0.182, 0.128, 0.091],
    2.75: [0.631, 0.446, 0.364, 0.316, 0.282, 0.196, 0.138, 0.098],
    3: [0.677, 0.479, 0.391, 0.339, 0.303, 0.210, 0.148, 0.105],
}

SIGMA_2 = {
    0.5: [0.320, 0.221, 0.179, 0.155, 0.138, 0.095, 0.067, 0.047],
    0.75: [0.341, 0.236, 0.191, 0.165, 0.147, 0.102, 0.072, 0.051],
    1: [0.369, 0.255, 0.207, 0.179, 0.159, 0.110, 0.078, 0.055],
    1.25: [0.402, 0.278, 0.226, 0.195, 0.174, 0.120, 0.085, 0.060],
    1.5: [0.440, 0.304, 0.246, 0.213, 0.190, 0.131, 0.092, 0.065],
    1.75: [0.480, 0.332, 0.269, 0.232, 0.207, 0.143, 0.101, 0.071],
    2: [0.522, 0.361, 0.293, 0.253, 0.225, 0.156, 0.110, 0.078],
    2.25: [0.567, 0.392, 0.318, 0.274, 0.245, 0.169, 0.119, 0.084],
    2.5: [0.612, 0.423, 0.343, 0.296, 0.264, 0.182, 0.129, 0.091],
    2.75: [0.659, 0.456, 0.370, 0.319, 0.285, 0.196, 0.139, 0.098],
    3: [0.707, 0.489, 0.396, 0.342, 0.305, 0.211, 0.149, 0.105],
}

SIGMA_3 = {
    0.5: [0.308, 0.217, 0.177, 0.153, 0.137, 0.095, 0.067, 0.047],
    0.75: [0.330, 0.232, 0.189, 0.164, 0.146, 0.101, 0.072, 0.051],
    1: [0.359, 0.252, 0.205, 0.177, 0.159, 0.110, 0.078, 0.055],
    1.25: [0.393, 0.275, 0.224, 0.194, 0.173, 0.120, 0.084, 0.060],
    1.5: [0.431, 0.301, 0.245, 0.212, 0.189, 0.131, 0.092, 0.065],
    1.75: [0.472, 0.329, 0.267, 0.231, 0.206, 0.143, 0.101, 0.071],
    2: [0.515, 0.359, 0.291, 0.252, 0.225, 0.155, 0.110, 0.078],
    2.25: [0.560, 0.390, 0.316, 0.273, 0.244, 0.169, 0.119, 0.084],
    2.5: [0.606, 0.421, 0.342, 0.296, 0.264, 0.182, 0.129, 0.091],
    2.75: [0.654, 0.454, 0.369, 0.318, 0.284, 0.196, 0.139, 0.098],
    3: [0.702, 0.487, 0.395, 0.341, 0.305, 0.210, 0.149, 0.105],
}

# 100 (sigma_IID,2 - sigma_IID,3), percentage points
DIFF_2_3 = {
    0.5: [1.21, 0.41, 0.22, 0.14, 0.10, 0.03, 0.01, 0.00],
    0.75: [1.13, 0.39, 0.21, 0.13, 0.10, 0.03, 0.01, 0.00],
    1: [1.04, 0.36, 0.19, 0.12, 0.09, 0.03, 0.01, 0.00],
    1.25: [0.95, 0.33, 0.18, 0.11, 0.08, 0.03, 0.01, 0.00],
    1.5: [0.87, 0.30, 0.16, 0.10, 0.07, 0.02, 0.01, 0.00],
    1.75: [0.80, 0.27, 0.15, 0.10, 0.07, 0.02, 0.01, 0.00],
    2: [0.73, 0.25, 0.14, 0.09, 0.06, 0.02, 0.01, 0.00],
    2.25: [0.67, 0.23, 0.13, 0.08, 0.06, 0.02, 0.01, 0.00],
    2.5: [0.62, 0.21, 0.12, 0.07, 0.05, 0.02, 0.01, 0.00],
    2.75: [0.58, 0.20, 0.11, 0.07, 0.05, 0.02, 0.01, 0.00],
    3: [0.54, 0.19, 0.10, 0.06, 0.05, 0.02, 0.01, 0.00],
}

Q_GRID = [2, 3, 4, 6, 12, 24, 36, 48, 125, 250]

# SR(q) / SR for AR(1) returns
COMPOUNDING = {
    0.9: [1.026, 1.046, 1.065, 1.102, 1.207, 1.408, 1.597, 1.773, 2.668, 3.698],
    0.8: [1.054, 1.097, 1.137, 1.213, 1.427, 1.808, 2.136, 2.424, 3.795, 5.318],
    0.7: [1.085, 1.152, 1.215, 1.333, 1.654, 2.187, 2.622, 2.997, 4.749, 6.679],
    0.6: [1.118, 1.213, 1.300, 1.462, 1.885, 2.551, 3.081, 3.534, 5.633, 7.936],
    0.5: [1.155, 1.279, 1.393, 1.600, 2.121, 2.910, 3.530, 4.057, 6.490, 9.153],
    0.4: [1.195, 1.353, 1.494, 1.748, 2.364, 3.273, 3.981, 4.581, 7.347, 10.371],
    0.3: [1.240, 1.433, 1.605, 1.905, 2.615, 3.645, 4.444, 5.119, 8.226, 11.618],
    0.2: [1.291, 1.523, 1.725, 2.073, 2.879, 4.035, 4.928, 5.682, 9.144, 12.921],
    0.1: [1.348, 1.622, 1.857, 2.254, 3.160, 4.450, 5.442, 6.280, 10.121, 14.308],
    0: [1.414, 1.732, 2.000, 2.449, 3.464, 4.899, 6.000, 6.928, 11.180, 15.811],
    -0.1: [1.491, 1.853, 2.157, 2.664, 3.798, 5.393, 6.615, 7.643, 12.350, 17.473],
    -0.2: [1.581, 1.987, 2.331, 2.901, 4.171, 5.949, 7.306, 8.449, 13.670, 19.349],
    -0.3: [1.690, 2.132, 2.527, 3.169, 4.596, 6.586, 8.103, 9.377, 15.196, 21.519],
    -0.4: [1.826, 2.287, 2.752, 3.477, 5.093, 7.339, 9.046, 10.480, 17.014, 24.106],
    -0.5: [2.000, 2.449, 3.024, 3.843, 5.692, 8.259, 10.205, 11.837, 19.262, 27.313],
    -0.6: [2.236, 2.611, 3.371, 4.300, 6.444, 9.436, 11.699, 13.593, 22.195, 31.505],
    -0.7: [2.582, 2.762, 3.860, 4.922, 7.449, 11.047, 13.768, 16.040, 26.327, 37.434],
    -0.8: [3.162, 2.887, 4.663, 5.909, 8.961, 13.505, 16.983, 19.884, 32.960, 47.018],
    -0.9: [4.472, 2.970, 6.472, 8.095, 12.064, 18.289, 23.325, 27.613, 46.986, 67.650],
}

# sqrt(q) / (SR(q) / SR)
SQRT_DEVIATION = {
    0.9: [1.378, 1.655, 1.877, 2.223, 2.870, 3.478, 3.757, 3.908, 4.190, 4.276],
    0.8: [1.342, 1.579, 1.760, 2.020, 2.428, 2.709, 2.809, 2.858, 2.946, 2.973],
    0.7: [1.304, 1.503, 1.647, 1.838, 2.095, 2.240, 2.288, 2.311, 2.354, 2.367],
    0.6: [1.265, 1.428, 1.539, 1.676, 1.837, 1.920, 1.947, 1.961, 1.985, 1.992],
    0.5: [1.225, 1.354, 1.436, 1.531, 1.633, 1.683, 1.700, 1.708, 1.723, 1.727],
    0.4: [1.183, 1.281, 1.339, 1.402, 1.466, 1.497, 1.507, 1.512, 1.522, 1.525],
    0.3: [1.140, 1.208, 1.246, 1.286, 1.325, 1.344, 1.350, 1.353, 1.359, 1.361],
    0.2: [1.095, 1.137, 1.159, 1.181, 1.203, 1.214, 1.218, 1.219, 1.223, 1.224],
    0.1: [1.049, 1.068, 1.077, 1.087, 1.096, 1.101, 1.102, 1.103, 1.105, 1.105],
    0: [1.000, 1.000, 1.000, 1.000, 1.000, 1.000, 1.000, 1.000, 1.000, 1.000],
    -0.1: [0.949, 0.935, 0.927, 0.920, 0.912, 0.908, 0.907, 0.906, 0.905, 0.905],
    -0.2: [0.894, 0.872, 0.858, 0.844, 0.831, 0.824, 0.821, 0.820, 0.818, 0.817],
    -0.3: [0.837, 0.812, 0.792, 0.773, 0.754, 0.744, 0.740, 0.739, 0.736, 0.735],
    -0.4: [0.775, 0.757, 0.727, 0.704, 0.680, 0.668, 0.663, 0.661, 0.657, 0.656],
    -0.5: [0.707, 0.707, 0.661, 0.637, 0.609, 0.593, 0.588, 0.585, 0.580, 0.579],
    -0.6: [0.632, 0.663, 0.593, 0.570, 0.538, 0.519, 0.513, 0.510, 0.504, 0.502],
    -0.7: [0.548, 0.627, 0.518, 0.498, 0.465, 0.443, 0.436, 0.432, 0.425, 0.422],
    -0.8: [0.447, 0.600, 0.429, 0.415, 0.387, 0.363, 0.353, 0.348, 0.339, 0.336],
    -0.9: [0.316, 0.583, 0.309, 0.303, 0.287, 0.268, 0.257, 0.251, 0.238, 0.234],
}

# 12 monthly returns with mean 0.01 and standard deviation 0.01 (SR_hat = 1)
TWELVE_MONTHS = [0.03, -0.01, 0.02, 0.0, 0.015, 0.005,
                 0.015, 0.005, 0.01, 0.01, 0.01, 0.01]
