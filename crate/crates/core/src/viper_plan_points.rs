pub(crate) const VIPER_PLAN_POINTS: [(&str, &[[f64; 6]]); 10] = [
    ("dtheta6", &[
        [0.0, -90.0, 210.0, -90.0, -26.0, -180.0],
        [0.0, -90.0, 210.0, -90.0, -26.0, -170.0],
        [0.0, -90.0, 210.0, -90.0, -26.0, -190.0],
        [0.0, -90.0, 210.0, -90.0, 26.0, 0.0],
        [0.0, -90.0, 210.0, -90.0, 26.0, 10.0],
        [0.0, -90.0, 210.0, -90.0, 26.0, -10.0],
    ]),
    ("dd6", &[
        [0.0, -90.0, 210.0, -90.0, -90.0, -90.0],
        [0.0, -90.0, 210.0, -90.0, -90.0, -85.0],
        [0.0, -90.0, 210.0, -90.0, -90.0, -95.0],
        [0.0, -90.0, 210.0, -90.0, 90.0, -90.0],
        [0.0, -90.0, 210.0, -90.0, 90.0, -85.0],
        [0.0, -90.0, 210.0, -90.0, 90.0, -95.0],
    ]),
    ("dtheta5", &[
        [0.0, -90.0, 210.0, -135.0, 10.0, -90.0],
        [0.0, -90.0, 210.0, -135.0, -5.0, -90.0],
        [0.0, -90.0, 210.0, 45.0, 0.0, -270.0],
        [0.0, -90.0, 210.0, 45.0, 10.0, -270.0],
        [0.0, -90.0, 210.0, 45.0, -5.0, -270.0],
        [0.0, -90.0, 210.0, -45.0, -5.0, -90.0],
        [0.0, -90.0, 210.0, -45.0, 10.0, -90.0],
        [0.0, -90.0, 210.0, 135.0, 0.0, -270.0],
        [0.0, -90.0, 210.0, 135.0, -5.0, -270.0],
        [0.0, -90.0, 210.0, 135.0, 10.0, -270.0],
    ]),
    ("dtheta4", &[
        [0.0, -90.0, 206.0, 0.0, 45.0, -90.0],
        [0.0, -90.0, 206.0, 10.0, 45.0, -90.0],
        [0.0, -90.0, 206.0, -10.0, 45.0, -90.0],
        [0.0, -90.0, 239.93, 0.0, -78.93, -90.0],
        [0.0, -90.0, 239.93, 10.0, -78.93, -90.0],
        [0.0, -90.0, 239.93, -10.0, -78.93, -90.0],
        [0.0, -90.0, 239.93, 0.0, -78.93, 90.0],
        [0.0, -90.0, 239.93, 10.0, -78.93, 90.0],
        [0.0, -90.0, 239.93, -10.0, -78.93, 90.0],
        [0.0, -90.0, 206.0, 0.0, 45.0, 90.0],
        [0.0, -90.0, 206.0, 10.0, 45.0, 90.0],
        [0.0, -90.0, 206.0, -10.0, 45.0, 90.0],
    ]),
    ("da3", &[
        [0.0, -90.0, 230.0, -65.0, -80.0, 0.0],
        [0.0, -90.0, 230.0, -60.0, -80.0, 0.0],
        [0.0, -90.0, 230.0, -70.0, -80.0, 0.0],
        [0.0, -90.0, 230.0, 65.0, -80.0, 0.0],
        [0.0, -90.0, 230.0, 70.0, -80.0, 0.0],
        [0.0, -90.0, 230.0, 60.0, -80.0, 0.0],
    ]),
    ("dd4", &[
        [0.0, -90.0, 130.0, -90.0, 0.0, -90.0],
        [0.0, -90.0, 135.0, -90.0, 0.0, -90.0],
        [0.0, -90.0, 140.0, -90.0, 0.0, -90.0],
        [0.0, -90.0, 125.0, -90.0, 0.0, -90.0],
        [0.0, -90.0, 120.0, -90.0, 0.0, -90.0],
        [0.0, -90.0, 150.0, -90.0, 0.0, -90.0],
    ]),
    ("da2", &[
        [0.0, -110.0, 230.0, -90.0, 0.0, -90.0],
        [0.0, -115.0, 235.0, -90.0, 0.0, -90.0],
        [0.0, -120.0, 240.0, -90.0, 0.0, -90.0],
        [0.0, -125.0, 245.0, -90.0, 0.0, -90.0],
        [0.0, -130.0, 250.0, -90.0, 0.0, -90.0],
        [0.0, -135.0, 255.0, -90.0, 0.0, -90.0],
    ]),
    ("dtheta3", &[
        [0.0, -110.0, 175.0, -90.0, 0.0, -90.0],
        [0.0, -110.0, 180.0, -90.0, 0.0, -90.0],
        [0.0, -110.0, 185.0, -90.0, 0.0, -90.0],
        [0.0, -120.0, 190.0, -90.0, 0.0, -90.0],
        [0.0, -120.0, 195.0, -90.0, 0.0, -90.0],
        [0.0, -120.0, 185.0, -90.0, 0.0, -90.0],
    ]),
    ("dtheta2", &[
        [-20.0, -95.0, 210.0, -90.0, -90.0, 0.0],
        [-20.0, -90.0, 210.0, -90.0, -90.0, 0.0],
        [-20.0, -85.0, 210.0, -90.0, -90.0, 0.0],
        [-20.0, 0.0, 15.0, -90.0, -90.0, 0.0],
        [-20.0, -5.0, 15.0, -90.0, -90.0, 0.0],
        [-20.0, 5.0, 15.0, -90.0, -90.0, 0.0],
    ]),
    ("da1", &[
        [-160.0, -125.0, 5.0, -90.0, -90.0, 0.0],
        [-160.0, -120.0, 5.0, -90.0, -90.0, 0.0],
        [-160.0, -115.0, 5.0, -90.0, -90.0, 0.0],
        [-160.0, -110.0, 5.0, -90.0, -90.0, 0.0],
        [-160.0, -105.0, 5.0, -90.0, -90.0, 0.0],
    ]),
];
