"""Published fidelity / success-probability tables used as regression references.

Rows are ``(t1, t2, t3, fidelity, success_percent)`` with times in us.
"""

from __future__ import annotations

# table number -> (g in rad/us, detuning as a fraction of g)
TABLE_CONFIG = {1: (1.0, 0.0), 2: (1.0, 0.1), 3: (17.5, 0.0), 4: (17.5, 0.1)}

TABLES = {
    1: [
        (1, 1, 45, 0.953017, 70.9),
        (5, 1, 1, 0.952057, 42.0),
        (5, 1, 46, 0.951075, 50.5),
        (12, 1, 1, 0.953527, 51.3),
        (12, 1, 2, 0.970373, 73.9),
        (12, 1, 20, 0.968870, 75.5),
        (12, 1, 27, 0.968235, 76.3),
        (12, 1, 34, 0.953858, 49.3),
        (12, 1, 45, 0.975297, 67.0),
        (12, 1, 46, 0.965878, 59.8),
        (23, 1, 1, 0.968455, 46.8),
        (23, 1, 2, 0.969310, 69.7),
        (23, 1, 20, 0.966943, 71.4),
        (23, 1, 27, 0.967875, 72.0),
        (23, 1, 34, 0.955247, 45.8),
        (23, 1, 45, 0.976124, 62.9),
        (23, 1, 46, 0.975231, 55.3),
        (34, 1, 1, 0.957197, 42.7),
        (34, 1, 45, 0.951170, 58.9),
        (34, 1, 46, 0.957395, 51.2),
        (41, 1, 2, 0.968149, 74.6),
        (41, 1, 20, 0.966810, 76.2),
        (41, 1, 27, 0.965816, 77.1),
        (41, 1, 34, 0.951813, 49.8),
        (41, 1, 45, 0.972791, 67.7),
        (41, 1, 46, 0.961744, 60.7),
    ],
    2: [
        (1, 1, 1, 0.917148, 55.9),
        (1, 1, 2, 0.947847, 77.6),
        (1, 1, 9, 0.845914, 54.4),
        (1, 1, 13, 0.818697, 50.7),
        (1, 32, 5, 0.851816, 78.4),
        (2, 30, 3, 0.883008, 3.5),
        (5, 1, 1, 0.936816, 42.6),
        (5, 1, 2, 0.923425, 65.1),
        (5, 1, 8, 0.837938, 44.4),
        (5, 1, 9, 0.804010, 45.0),
        (5, 1, 15, 0.846834, 26.4),
        (5, 32, 5, 0.834717, 66.1),
        (5, 32, 10, 0.823751, 33.1),
        (6, 30, 1, 0.815561, 44.6),
        (6, 30, 2, 0.845026, 62.7),
        (8, 1, 2, 0.829526, 83.7),
        (8, 1, 9, 0.810296, 54.5),
        (12, 1, 1, 0.876137, 52.8),
        (12, 1, 2, 0.899566, 74.7),
        (12, 1, 8, 0.805662, 55.9),
        (12, 1, 9, 0.814788, 52.4),
        (12, 1, 13, 0.808298, 48.5),
        (12, 32, 5, 0.818571, 75.5),
        (50, 1, 1, 0.827253, 54.7),
        (50, 1, 2, 0.835046, 76.5),
        (50, 1, 48, 0.801231, 50.7),
    ],
    3: [
        (15, 38, 19, 0.955450, 34.1),
        (15, 38, 47, 0.955040, 29.6),
        (15, 38, 53, 0.956239, 39.3),
        (15, 38, 61, 0.953247, 31.6),
        (15, 38, 89, 0.956397, 42.0),
        (15, 38, 95, 0.963001, 32.0),
        (32, 38, 19, 0.951438, 32.9),
        (32, 38, 47, 0.954557, 28.5),
        (32, 38, 53, 0.951940, 38.1),
        (32, 38, 61, 0.951898, 30.4),
        (32, 38, 89, 0.951164, 40.7),
        (32, 38, 95, 0.961062, 30.8),
        (38, 38, 89, 0.951349, 47.6),
        (49, 38, 95, 0.956297, 29.7),
        (55, 38, 19, 0.952102, 38.1),
        (55, 38, 25, 0.950950, 54.3),
        (55, 38, 53, 0.952674, 43.7),
        (55, 38, 89, 0.955947, 46.3),
        (55, 38, 95, 0.952517, 36.1),
        (72, 38, 19, 0.955415, 36.9),
        (72, 38, 25, 0.952313, 52.9),
        (72, 38, 53, 0.956310, 42.4),
        (72, 38, 89, 0.958697, 45.0),
        (72, 38, 95, 0.957923, 34.9),
        (89, 38, 25, 0.951564, 51.6),
        (89, 38, 95, 0.961521, 33.7),
    ],
    4: [
        (10, 30, 17, 0.842295, 58.4),
        (10, 30, 21, 0.837639, 46.8),
        (10, 30, 43, 0.803492, 62.4),
        (10, 30, 46, 0.855158, 87.6),
        (13, 30, 9, 0.816954, 49.0),
        (13, 30, 17, 0.854786, 58.3),
        (13, 30, 21, 0.819474, 46.6),
        (13, 30, 34, 0.806463, 68.8),
        (13, 30, 46, 0.848566, 86.5),
        (13, 30, 49, 0.825522, 68.2),
        (15, 27, 50, 0.809714, 18.8),
        (18, 27, 11, 0.844388, 53.4),
        (18, 27, 14, 0.832976, 23.3),
        (18, 27, 36, 0.870633, 27.4),
        (18, 27, 40, 0.830723, 24.5),
        (18, 27, 50, 0.921186, 20.4),
        (21, 27, 36, 0.802649, 30.3),
        (21, 27, 50, 0.868293, 23.1),
        (39, 30, 17, 0.805561, 57.6),
        (39, 30, 21, 0.828222, 45.7),
        (39, 30, 43, 0.811022, 62.6),
        (39, 30, 46, 0.862737, 83.8),
        (42, 30, 9, 0.861602, 46.4),
        (42, 30, 17, 0.831920, 56.9),
        (42, 30, 21, 0.835240, 45.0),
        (42, 30, 34, 0.836005, 64.8),
    ],
}


def table_params(number: int) -> tuple[float, float]:
    """``(g, delta)`` of a published table."""
    g, frac = TABLE_CONFIG[number]
    return g, frac * g
