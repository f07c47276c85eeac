/// 69 reference rows: six joint angles then ten published sensitivity
/// values (identification order), corrected where the printed source
/// carries transcription slips that its own symmetric entries contradict.
pub const REFERENCE_ROWS: [( [f64; 6], [f64; 10] ); 69] = [
    ([0.0, -90.0, 210.0, -90.0, -26.0, -180.0], [-1.07, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -90.0, -26.0, -170.0], [-1.08, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -90.0, -26.0, -190.0], [-1.07, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -90.0, 26.0, 0.0], [1.07, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -90.0, 26.0, 10.0], [1.07, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -90.0, 26.0, -10.0], [1.08, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -90.0, -90.0, -90.0], [0.0, 1.41, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -90.0, -90.0, -85.0], [0.03, 1.41, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -90.0, -90.0, -95.0], [-0.03, 1.41, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -90.0, 90.0, -90.0], [0.0, 1.41, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -90.0, 90.0, -85.0], [0.03, 1.41, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -90.0, 90.0, -95.0], [-0.03, 1.41, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -135.0, 10.0, -90.0], [-0.09, 0.17, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -135.0, -5.0, -90.0], [0.1, -0.08, -0.22, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, 45.0, 0.0, -270.0], [0.0, 0.0, -4.19, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, 45.0, 10.0, -270.0], [0.29, -0.13, -3.9, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, 45.0, -5.0, -270.0], [-0.06, 0.08, -4.17, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -45.0, -5.0, -90.0], [0.06, 0.08, -0.13, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, -45.0, 10.0, -90.0], [-0.29, -0.13, 0.62, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, 135.0, 0.0, -270.0], [0.0, 0.0, 4.19, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, 135.0, -5.0, -270.0], [-0.1, -0.08, 4.15, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 210.0, 135.0, 10.0, -270.0], [0.09, 0.17, 4.13, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 206.0, 0.0, 45.0, -90.0], [-1.3, 0.18, 2.82, 0.43, -0.04, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 206.0, 10.0, 45.0, -90.0], [-1.29, 0.17, 2.8, 0.46, -0.03, 0.01, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 206.0, -10.0, 45.0, -90.0], [-1.29, 0.22, 2.81, 0.38, -0.05, -0.01, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 239.93, 0.0, -78.93, -90.0], [-0.46, 0.18, 0.99, -3.04, 0.27, 0.08, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 239.93, 10.0, -78.93, -90.0], [-0.16, 0.21, 0.34, -2.62, 0.36, 0.03, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 239.93, -10.0, -78.93, -90.0], [-0.58, 0.22, 1.26, -3.15, 0.22, 0.13, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 239.93, 0.0, -78.93, 90.0], [0.46, 0.18, -2.81, 3.04, 0.27, 0.08, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 239.93, 10.0, -78.93, 90.0], [0.58, 0.22, -2.67, 3.15, 0.22, 0.13, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 239.93, -10.0, -78.93, 90.0], [0.16, 0.21, -2.93, 2.62, 0.36, 0.03, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 206.0, 0.0, 45.0, 90.0], [1.3, 0.18, -0.97, -0.43, -0.04, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 206.0, 10.0, 45.0, 90.0], [1.29, 0.22, -0.49, -0.38, -0.05, -0.01, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 206.0, -10.0, 45.0, 90.0], [1.29, 0.17, -1.19, -0.46, -0.03, 0.01, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 230.0, -65.0, -80.0, 0.0], [-1.15, 1.15, 0.19, -1.72, 0.25, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 230.0, -60.0, -80.0, 0.0], [-1.13, 1.13, 0.1, -1.69, 0.26, -0.02, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 230.0, -70.0, -80.0, 0.0], [-1.16, 1.17, 0.26, -1.73, 0.25, 0.02, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 230.0, 65.0, -80.0, 0.0], [1.15, 1.15, -2.92, 1.72, 0.25, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 230.0, 70.0, -80.0, 0.0], [1.16, 1.17, -2.88, 1.73, 0.25, 0.02, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 230.0, 60.0, -80.0, 0.0], [1.13, 1.13, -2.96, 1.69, 0.26, -0.02, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 130.0, -90.0, 0.0, -90.0], [0.0, 1.28, 0.0, 0.0, -0.09, 1.28, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 135.0, -90.0, 0.0, -90.0], [0.0, 1.21, 0.0, 0.0, -0.09, 1.21, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 140.0, -90.0, 0.0, -90.0], [0.0, 1.14, 0.0, 0.0, -0.08, 1.14, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 125.0, -90.0, 0.0, -90.0], [0.0, 1.35, 0.0, 0.0, -0.1, 1.35, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 120.0, -90.0, 0.0, -90.0], [0.0, 1.41, 0.0, 0.0, -0.1, 1.41, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -90.0, 150.0, -90.0, 0.0, -90.0], [0.0, 1.0, 0.0, 0.0, -0.07, 1.0, 0.0, 0.0, 0.0, 0.0]),
    ([0.0, -110.0, 230.0, -90.0, 0.0, -90.0], [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.35, 0.0, 0.0, 0.0]),
    ([0.0, -115.0, 235.0, -90.0, 0.0, -90.0], [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.43, 0.0, 0.0, 0.0]),
    ([0.0, -120.0, 240.0, -90.0, 0.0, -90.0], [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.52, 0.0, 0.0, 0.0]),
    ([0.0, -125.0, 245.0, -90.0, 0.0, -90.0], [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.6, 0.0, 0.0, 0.0]),
    ([0.0, -130.0, 250.0, -90.0, 0.0, -90.0], [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.68, 0.0, 0.0, 0.0]),
    ([0.0, -135.0, 255.0, -90.0, 0.0, -90.0], [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.77, 0.0, 0.0, 0.0]),
    ([0.0, -110.0, 175.0, -90.0, 0.0, -90.0], [0.0, 0.88, 0.0, 0.0, -0.28, 0.88, 0.03, -1.63, 0.0, 0.0]),
    ([0.0, -110.0, 180.0, -90.0, 0.0, -90.0], [0.0, 0.8, 0.0, 0.0, -0.28, 0.8, 0.02, -1.63, 0.0, 0.0]),
    ([0.0, -110.0, 185.0, -90.0, 0.0, -90.0], [0.0, 0.72, 0.0, 0.0, -0.27, 0.72, 0.02, -1.63, 0.0, 0.0]),
    ([0.0, -120.0, 190.0, -90.0, 0.0, -90.0], [0.0, 0.76, 0.0, 0.0, -0.38, 0.76, 0.06, -2.42, 0.0, 0.0]),
    ([0.0, -120.0, 195.0, -90.0, 0.0, -90.0], [0.0, 0.67, 0.0, 0.0, -0.37, 0.67, 0.06, -2.42, 0.0, 0.0]),
    ([0.0, -120.0, 185.0, -90.0, 0.0, -90.0], [0.0, 0.84, 0.0, 0.0, -0.39, 0.84, 0.06, -2.42, 0.0, 0.0]),
    ([-20.0, -95.0, 210.0, -90.0, -90.0, 0.0], [0.39, 0.8, -1.93, 0.95, -0.08, 0.04, 0.05, 0.02, 0.39, 0.01]),
    ([-20.0, -90.0, 210.0, -90.0, -90.0, 0.0], [0.36, 0.77, -2.06, 0.85, -0.01, 0.01, 0.0, 0.34, 0.41, 0.01]),
    ([-20.0, -85.0, 210.0, -90.0, -90.0, 0.0], [0.32, 0.74, -2.21, 0.72, 0.07, -0.01, -0.05, 0.63, 0.42, 0.02]),
    ([-20.0, 0.0, 15.0, -90.0, -90.0, 0.0], [0.71, 0.77, 1.49, 1.62, -0.31, 1.55, -1.38, 1.65, 0.41, 0.01]),
    ([-20.0, -5.0, 15.0, -90.0, -90.0, 0.0], [0.65, 0.79, 1.66, 1.52, -0.3, 1.6, -1.31, 1.67, 0.4, 0.0]),
    ([-20.0, 5.0, 15.0, -90.0, -90.0, 0.0], [0.78, 0.74, 1.29, 1.73, -0.33, 1.5, -1.43, 1.58, 0.43, 0.02]),
    ([-160.0, -125.0, 5.0, -90.0, -90.0, 0.0], [0.97, 0.54, -2.14, 1.85, -1.44, -0.01, -0.49, -8.99, -1.68, 1.89]),
    ([-160.0, -120.0, 5.0, -90.0, -90.0, 0.0], [0.8, 0.63, -2.48, 1.47, -1.17, -0.06, -0.47, -7.72, 0.46, 1.94]),
    ([-160.0, -115.0, 5.0, -90.0, -90.0, 0.0], [0.6, 0.71, -2.73, 1.03, -0.86, -0.09, -0.42, -6.22, 2.58, 1.97]),
    ([-160.0, -110.0, 5.0, -90.0, -90.0, 0.0], [0.39, 0.77, -2.85, 0.58, -0.55, -0.09, -0.34, -4.62, 4.49, 1.96]),
    ([-160.0, -105.0, 5.0, -90.0, -90.0, 0.0], [0.19, 0.81, -2.88, 0.14, -0.25, -0.06, -0.26, -3.08, 6.08, 1.92]),
];

/// Row count of each calibration step in the reference table.
pub const REFERENCE_STEP_SIZES: [usize; 10] = [6, 6, 10, 12, 6, 6, 6, 6, 6, 5];
