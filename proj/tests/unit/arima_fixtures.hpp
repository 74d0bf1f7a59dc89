#pragma once

#include <vector>

// fixed samples shared with the statsmodels reference values in test_arima.cpp
namespace arima_fixtures {

inline const std::vector<double> kArma21{
    0.4412, 0.0662, 2.2433, 1.8286, 0.4744, 1.4978, 0.3778, -1.066, -0.6576, -0.3704, -1.3784, -1.2971,
    -0.8136, 0.3125, -1.1044, -1.9808, 0.1018, 2.7649, 0.5939, -0.2157, -0.9493, -1.6806, -1.8651,
    -1.3677, 0.5166, 1.6428, 1.0622, -0.1371, -0.423, -0.2887, 0.6909, 0.0889, -0.3526, -0.2976, -0.171,
    0.2023, 0.4327, 1.5898, 1.1554, 1.7865, 0.9809, -0.4669, -0.52, 0.2291, 0.6303, 1.6692, 2.3646,
    1.7987, 0.2878, -0.451, 1.0901, 1.4219, -0.7294, -1.8629, -1.6389, 0.4743, 0.9187, 2.5817, 2.6678,
    1.205, -0.3168, 0.3985, 0.4108, -0.7947, -0.241, 0.2784, 1.3816, 1.0371, -2.6469, -1.8854, -1.9753,
    0.1771, 2.9205, 1.7263, -1.0564, -2.7364, -0.8431, 0.2727, -0.3742, -0.7244, 1.7038, 2.1791, 1.6333,
    1.456, 1.7305, 2.0428, 0.3894, -0.7133, -1.2813, -1.5135, 0.3566, 0.4358, -0.1333, -0.8783, -1.283,
    0.085, 0.169, -0.5928, -0.0295, 0.8017, 1.3994, 1.0271, -1.4518, -1.0025, 0.5396, 1.6877, 0.2967,
    1.993, 0.7131, 0.1919, 0.2901, -0.3621, 0.3822, 0.3085, -2.3704, -3.3484, -1.2094, 2.486, 0.8988,
    -0.6572, 0.9356, 1.7864, 0.5732, -1.6428, -3.286, -2.7748, -1.3978, -2.5404, -3.584, -1.6577,
    -0.3996, -0.7867, -1.0229, -1.3297, 0.1422, 2.348, 3.8752, 3.0072, 1.7597, 2.0403, 2.9919, 3.2485,
    2.8242, 0.6127, -2.1121, -0.9413, 0.2088, 0.1995, -0.8537, -2.1235, -0.0092, 1.4461, -0.1541,
    -0.4019, 0.2917, 0.8703, 2.8188, 2.094, -0.8103, -1.2992, -1.1193, -0.0098, 0.6489, 0.7571, -0.1797,
    -0.0544, -0.3361, 0.156, 0.0511, -1.2445, -0.5813, -0.5484, 1.0035, 1.6319, 1.2602, 0.5921, 0.0252,
    -2.5163, -0.9957, -0.3196, 0.67, 0.1429, -0.4611, -0.5406, -1.3062, -1.1321, 0.1029, 0.0542,
    -1.4232, -1.8013, -0.5955, 1.3097, 2.0687, 1.3942, -0.5973, -0.0688, 0.472, 0.0195, 0.7295, 1.3427};

inline const std::vector<double> kArma11{
    6.7495, 6.2884, 5.2027, 2.3229, 2.5895, 3.2316, 3.3064, 4.1383, 4.9986, 4.0599, 3.23, 3.1964,
    4.4648, 5.447, 4.131, 2.9675, 4.1815, 6.3046, 6.2241, 5.0417, 5.9156, 5.5685, 5.974, 7.3512, 7.5055,
    6.7658, 6.8138, 5.6654, 5.0284, 4.3896, 4.2572, 4.0065, 4.0722, 4.007, 4.379, 4.7178, 5.1461,
    6.5793, 4.8216, 5.7245, 5.5861, 4.0482, 3.8868, 4.3722, 5.7184, 4.6897, 4.7127, 5.0106, 3.3576,
    2.3236, 3.6385, 5.0587, 6.3316, 6.6591, 6.5508, 6.1719, 6.9491, 5.6891, 5.0187, 5.354, 3.7505,
    5.088, 4.6532, 4.4823, 6.8245, 5.9123, 4.7692, 6.2644, 5.147, 4.3321, 4.9857, 5.6016, 6.0913,
    6.2034, 7.1786, 7.7267, 7.5361, 6.0174, 4.6921, 2.6929, 3.7306, 2.6215, 3.9051, 6.4532, 5.3642,
    4.2155, 3.8477, 4.9961, 4.3834, 4.2405, 3.982, 3.981, 5.6045, 4.7859, 4.654, 5.0856, 5.9915, 4.5884,
    5.4887, 6.0625, 6.6422, 6.3192, 4.174, 3.3654, 4.6428, 5.0678, 5.003, 6.7787, 8.8066, 7.9074,
    8.6662, 5.786, 2.8245, 3.947, 4.3664, 5.1202, 5.7624, 5.523, 5.9691, 5.9368, 4.0752, 4.2043, 4.7739,
    6.7528, 5.4726, 4.9619, 4.5578, 4.4745, 6.304, 6.6588, 5.6443, 5.4011, 6.0529, 4.8676, 4.358,
    6.0777, 6.9654, 6.3913, 5.3439, 4.909, 3.3481, 4.4866, 5.316, 5.4302, 4.0022, 3.2971, 4.2783, 4.979,
    4.568, 5.0968, 6.1484, 5.2956, 4.444, 3.6373, 2.7662, 4.1098, 5.2149, 5.6207, 4.3019, 3.1835,
    3.5287, 3.6837, 4.2063, 3.8609, 4.7608, 6.8522, 8.1978, 8.9925, 7.9495, 7.7126, 6.5272, 6.7232,
    5.9315, 4.9564, 4.1828, 5.0155, 5.4944, 5.5656, 4.2555, 4.3531, 3.2137, 4.9725, 5.2949, 5.3319,
    5.1523, 3.4759, 2.2386, 2.9033, 5.226, 4.4681, 3.6409, 3.9257, 2.6539, 1.3888, 1.9126, 2.9789,
    3.3826, 5.4464, 5.5639, 5.6495, 7.0958, 8.4406, 5.986, 4.7375, 5.8918, 4.505, 3.3653, 2.4445,
    1.7155, 1.4865, 2.7285, 4.9591, 6.8842, 6.6008, 3.9935, 3.7483, 3.8928, 4.5862, 4.729, 3.0028,
    3.6761, 2.2618, 2.0466, 3.3327, 4.4435, 6.3426, 3.9145, 3.98, 5.1794, 4.9872, 5.5322, 4.4087,
    4.9717, 5.7183, 4.6108, 3.8054, 3.8934, 3.623, 5.0214, 5.5013, 6.6681, 7.5705, 6.9557, 5.9986,
    4.5946, 3.6681, 3.1583, 4.0025, 3.6222, 3.9869, 4.6083, 4.3265, 4.2608, 5.946, 7.6132, 6.2689,
    5.3319, 4.7686, 4.4738, 6.1367, 6.829, 7.5633, 8.6928, 7.3084, 6.0658, 5.6237, 6.4124, 6.0642,
    6.257, 7.1163, 7.7835, 7.4657, 5.8247, 3.7041, 4.8779, 5.7198, 4.6314, 3.9925, 3.7952, 2.4675,
    3.2296, 3.2262, 3.4052, 4.6945, 4.943, 5.4801, 5.8734, 5.6824, 5.4678, 7.1569, 6.682, 7.5856,
    6.1257, 6.1306, 6.0681, 4.9629, 2.1115, 4.0676, 3.7638, 2.9487};

inline const std::vector<double> kDriftAr1{
    11.9886, 13.5195, 14.4814, 13.1988, 12.3802, 11.7161, 11.4013, 10.7169, 10.4309, 9.9107, 8.4367,
    8.6843, 9.7895, 12.1516, 13.4827, 13.8436, 13.5786, 11.9997, 12.2926, 11.438, 9.9256, 9.0638,
    10.219, 11.1334, 10.6668, 9.8205, 10.1225, 10.2131, 9.5895, 9.1477, 9.7718, 12.16, 12.21, 11.7086,
    10.7541, 7.9578, 5.7358, 3.701, 3.9075, 3.9789, 2.4913, 2.4941, 2.2393, 0.4687, -0.9132, -2.0927,
    -3.4564, -4.0085, -6.4328, -7.8128, -7.3895, -6.2251, -4.4347, -2.3201, 0.3247, 0.6288, 1.7267,
    0.5148, -0.5941, -2.963, -2.9993, -1.5837, -0.9733, 1.2065, 1.7217, 2.2299, 2.7369, 2.0263, 2.2089,
    4.3392, 4.4794, 5.5488, 6.029, 8.1388, 9.7774, 11.373, 12.9139, 14.0335, 13.2975, 14.4212, 13.7123,
    13.6965, 14.4026, 14.0178, 14.0704, 15.3646, 16.0876, 15.6605, 12.6311, 10.2446, 8.5603, 7.3017,
    5.8125, 5.5451, 4.9367, 4.6231, 5.2453, 4.801, 4.3786, 6.4256, 8.4234, 8.2287, 8.1517, 8.7776,
    10.4241, 11.4963, 11.6018, 11.024, 11.4802, 12.1214, 12.0253, 11.8882, 11.5034, 12.1357, 11.8619,
    12.3114, 13.4877, 14.6621, 14.515, 15.8865, 15.994, 16.5742, 16.211, 14.3852, 13.7981, 13.8916,
    13.9609, 14.3716, 14.0286, 13.2196, 12.747, 14.52, 16.3213, 16.8019, 17.701, 17.7721, 17.4504,
    18.2489, 18.2228, 16.6342, 15.0334, 14.4214, 14.3434, 15.646, 15.6813, 16.5304, 17.4809, 17.9072,
    19.0561, 20.2227, 20.0437, 21.1259, 20.5461, 20.4158, 20.4531, 20.9964, 20.6426, 20.5308, 20.4342,
    21.483, 21.3115, 21.3985, 21.2808, 20.0239, 22.1715, 23.2741, 22.4388, 23.5297, 23.1046, 23.3629,
    24.4549, 24.4525, 24.1204, 23.514, 23.1815, 21.4928, 19.5128, 18.482, 19.1056, 20.1491, 22.5003,
    24.4699, 25.0436, 25.3076, 23.5092, 21.7493, 19.9489, 19.4193, 19.9024, 19.6835, 19.0856, 17.3401,
    16.4395, 16.3374, 16.8322, 16.3968, 18.2677, 20.4981, 21.6181, 21.7509, 21.5958, 21.7693, 21.9374,
    22.605, 23.8078, 25.8754, 28.1565, 29.2868, 30.3402, 30.5798, 30.2124, 32.0395, 32.5932, 34.9608,
    35.8955, 36.7157, 38.3153, 39.2389, 40.1939, 40.53, 40.3225, 40.153, 39.5185, 40.9327, 41.572,
    43.7144, 42.2005, 41.5619, 41.9046, 41.8821, 43.0655, 44.3969, 44.888, 45.6686, 48.9708, 50.9738,
    52.3749, 52.7354, 53.1492, 52.1668, 51.5773, 53.8401, 56.1388, 58.0295, 60.1788, 63.2352, 65.457,
    68.7388, 71.5495, 73.2213};

inline const std::vector<double> kWeeklyX{
    3.5011, 1.7109, 0.7683, 1.4944, 1.4194, 1.2866, 0.1973, 2.2881, 1.2745, 1.0619, 2.2606, 3.8444,
    3.0344, 3.1213, 5.7713, 3.3393, 4.0784, 1.9307, 1.8351, 3.2316, 3.1679, 3.9991, 3.1178, 2.8276,
    2.8474, 1.9837, 2.2023, 2.4093, 3.1655, -0.2256, 1.0272, 4.0661, 0.1543, 0.3484, 1.1121, 3.4141,
    3.0961, 3.4808, 3.8961, 4.1479, 2.2027, 2.0248, 3.01, 2.2404, 1.7204, 0.9651, 3.5033, 2.451, 1.5417,
    4.1414, 1.0457, 1.1149, 0.944, -0.3967, -1.6144, 0.4966, 2.2424, 0.8353, 2.3035, 1.2224, 3.3826,
    0.8557, -1.2511, 1.9734, 1.7868, 3.5744, 2.136, 1.6783, 1.7016, 4.2977, 2.6103, 1.9839, 1.9708,
    1.0283, 1.2282, 1.8008, 1.0652, 3.1263, 2.5144, 2.9552, 1.9163, 1.6891, 1.9111, 2.8127, 3.9881,
    3.4039, 3.0641, 0.8418, 2.5598, 1.5709, 2.3654, 3.6382, 2.9801, 2.4386, 2.3175, 0.4733, 2.7573,
    2.328, 3.2357, 3.1787, 3.0327, 2.6528, 2.741, 2.3582, 1.0728, 1.8559, 2.2624, 3.1599, 3.0042,
    2.7108, 3.2552, 3.6568, 4.5853, 3.4333, 3.4569, 2.0525, 2.8352, 1.3142, -0.5326, 3.1669, 1.465,
    3.7263, 1.4461, 2.7178, 2.0463, 2.2893, 2.5202, 4.0094, 2.5239, 4.2403, 2.8142, 1.1071, 0.836,
    4.3524, 1.7623, 1.987, 3.3907, 3.6382, 1.6387, 1.5635, 4.8848, 2.0076, 2.9636, 2.5967, 0.9933,
    1.9019, 1.3624, 3.368, 1.1564, 2.3064, 2.0629, 2.9384, 1.2848, 1.5391, 4.3809, 3.5896, 3.6556,
    3.5229, 1.8767, 2.3909, 2.8024, 4.0829, 2.9404, 1.9395, 2.7696, 2.0473, 1.1793, 0.192, 3.8842,
    0.9569, 0.5555, -0.1489, 3.1834, 4.3633, 2.1467, 1.7339, 0.5175, 0.7594, 1.0164, 1.9818, 0.9567,
    1.4488, 3.6644, 2.4202, 2.5107, 1.607, 1.6542, 2.562, 0.8992, 3.9967, 1.748, 2.8303, 0.5267, 1.8411,
    1.3691, 2.8176, 3.706, 1.0496, 2.4551, 1.3301};

}  // namespace arima_fixtures
