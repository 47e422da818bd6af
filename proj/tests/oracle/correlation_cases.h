// Copyright 2026 The episim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Generated by make_correlation_cases.py from scipy.stats; do not edit.
#pragma once
#include <vector>
struct CorrelationCase {
    std::vector<double> a, b;
    double pearson, pearson_p, spearman, spearman_p;
};
inline const std::vector<CorrelationCase> correlation_cases = {
    {{4.0, 3.0, 2.0, 0.0, 5.0, 5.0, 2.0, 3.0},
     {0.0, 3.0, 0.0, 0.0, 5.0, 3.0, 0.0, 3.0},
     0.6822422923379534, 0.06230927831255971, 0.7171371656006361, 0.04525626534780607},
    {{12.8287, 12.5288, 7.2944, 13.9345, 11.2742, 7.8368, 11.896, 7.2253, 10.8874, 9.2282, 9.5683},
     {6.4459, 3.4268, 1.1378, 9.116, 3.8149, 4.9904, 6.7098, 0.2255, 6.2594, 3.4881, 5.026},
     0.7655236486551148, 0.00603002866092498, 0.7181818181818183, 0.01279959806885844},
    {{13.1511, 7.997, 7.4418, 10.9835, 10.4345, 11.6564, 7.9906, 11.8983, 12.2942, 5.2579, 13.1306, 20.0363, 10.2379, 9.4698, 16.674},
     {5.708, 6.7387, 6.6127, 7.1084, 6.9743, 8.3147, 3.0968, 3.2331, 6.5085, 3.0712, 5.4223, 12.2823, 2.8348, 6.2577, 9.3963},
     0.7115608907182512, 0.0029294362782487306, 0.4535714285714285, 0.08948590014302728},
    {{3.0, 2.0, 0.0, 1.0, 0.0},
     {1.0, 0.0, 5.0, 1.0, 5.0},
     -0.8280086818880265, 0.08337954467429452, -0.8111071056538127, 0.09570892463402966},
    {{9.2431, 11.1425, 14.7934, 4.7773, 8.7388},
     {5.4916, 5.2421, 5.5779, 2.736, 5.981},
     0.7004702926585891, 0.1876929171369093, 0.3, 0.6238376647810728},
    {{14.3131, 8.1538, 7.7405, 4.6751, 11.8505, 12.4937, 11.0623},
     {6.2246, 6.8498, 1.8586, 0.8342, 6.5669, 5.7695, 5.2205},
     0.7550538237797075, 0.049730876585888185, 0.5357142857142858, 0.21521745567801273},
    {{0.0, 4.0, 4.0, 3.0, 4.0, 3.0},
     {5.0, 3.0, 3.0, 5.0, 3.0, 0.0},
     -0.42215852683817506, 0.40438029629267375, -0.45000000000000007, 0.3705624999999999},
    {{4.0579, 11.0946, 8.6611, 6.7659, 12.8237, 13.8638, 7.1246, 7.4377, 18.588, 10.9163, 11.5856, 12.3795},
     {2.4369, 4.8217, 4.316, 3.1254, 7.8197, 9.1248, 3.5575, 5.2904, 9.6229, 4.8284, 4.2753, 6.7048},
     0.8936649422943858, 8.93447089983875e-05, 0.8811188811188813, 0.00015267406467669873},
    {{7.0433, 9.5313, 13.7712, 9.8634, 10.2478},
     {3.8524, 6.0915, 8.5061, 4.4164, 5.5202},
     0.9168639242152692, 0.028413639941399782, 0.7, 0.1881204043741873},
    {{2.0, 0.0, 4.0, 4.0, 2.0, 2.0, 0.0, 4.0, 1.0, 0.0, 2.0, 3.0, 5.0},
     {5.0, 4.0, 4.0, 5.0, 3.0, 2.0, 4.0, 5.0, 4.0, 1.0, 0.0, 1.0, 5.0},
     0.3400308137141396, 0.2556407984588257, 0.43686916298320744, 0.13552717681434223},
    {{15.702, 9.4145, 12.7568, 10.7202, 9.1888, 9.5319, 9.9626, 10.4751, 9.2305, 5.025, 12.7982, 13.7243, 9.2825, 4.8471, 10.8293},
     {9.328, 5.4796, 4.1372, 5.6663, 5.5196, 4.8476, 7.4975, 6.2489, 4.8462, 3.0374, 4.6061, 8.135, 6.8227, 1.6119, 5.0972},
     0.7347607137312216, 0.001807203117294952, 0.4678571428571427, 0.0786302311543806},
    {{14.548, 11.8829, 11.4389, 12.433, 7.9258, 10.8436, 5.8485, 6.7544, 7.49, 9.064, 12.2605},
     {6.7819, 1.1464, 7.2355, 5.719, 3.982, 4.2479, 3.4413, 4.6266, 5.9716, 4.8746, 8.1277},
     0.36146074073358486, 0.27473070071960537, 0.4727272727272727, 0.14199852020631992},
    {{1.0, 0.0, 4.0, 0.0, 1.0, 0.0, 5.0, 1.0, 5.0, 5.0, 0.0},
     {5.0, 4.0, 5.0, 5.0, 4.0, 1.0, 5.0, 3.0, 1.0, 1.0, 3.0},
     -0.1852868322117975, 0.5854523515944173, -0.056650933670767976, 0.8685974176833657},
    {{13.5864, 11.1732, 4.466, 12.8273, 8.4349},
     {3.7973, 4.6736, 1.9582, 5.9543, 6.2592},
     0.5045122420356726, 0.38603427369591076, 0.09999999999999999, 0.8728885715695383},
    {{11.3074, 14.6882, 12.0516, 7.4621, 13.2059, 13.6197},
     {4.3825, 6.9775, 6.4897, 8.426, 5.245, 5.0132},
     -0.5135669695968964, 0.2973764547878073, -0.08571428571428573, 0.8717434402332361},
    {{1.0, 1.0, 5.0, 4.0, 3.0, 1.0, 3.0, 0.0, 4.0, 0.0, 0.0},
     {4.0, 5.0, 0.0, 0.0, 2.0, 4.0, 5.0, 4.0, 0.0, 4.0, 0.0},
     -0.5519477984080957, 0.07833572085955558, -0.41335245692894873, 0.20635696056193126},
    {{10.7906, 6.2016, 10.0709, 9.6253, 10.5688},
     {6.5042, 5.2809, 4.65, 4.0614, 5.1543},
     0.13174927256939808, 0.8327381800837753, 0.39999999999999997, 0.5046315754686911},
    {{6.3013, 9.721, 9.7341, 12.2462, 11.8902, 3.9528, 5.636, 8.7363, 11.297, 8.9118, 10.3004, 6.8667, 8.8164},
     {4.0823, 7.5646, 5.8084, 5.7236, 2.5853, -0.0083, 5.5126, 2.533, 6.0155, 3.4751, 3.6031, 3.7227, 3.0835},
     0.4386372570385847, 0.133771129127116, 0.3516483516483516, 0.2386997053420337},
    {{5.0, 3.0, 4.0, 2.0, 4.0, 3.0, 3.0, 3.0, 3.0, 0.0, 0.0, 0.0, 0.0},
     {1.0, 0.0, 5.0, 1.0, 4.0, 3.0, 4.0, 1.0, 4.0, 5.0, 4.0, 2.0, 1.0},
     -0.04811715481171548, 0.8759569974489263, 0.010356162766686668, 0.973213958247193},
    {{10.6612, 9.4564, 9.4092, 11.6189, 8.2231, 13.764, 12.2351, 5.8735, 16.9231, 6.9105, 13.4623, 8.4564, 7.7799, 11.8475, 8.0508},
     {6.2014, 3.5603, 5.7973, 7.123, 2.7193, 7.0434, 7.0424, 3.6105, 7.3892, 4.4801, 6.4834, -0.6341, 1.4397, 9.591, 1.2355},
     0.6997055592743697, 0.0036865874204717276, 0.7678571428571428, 0.0008293296291369939},
};
