"""
``defaultconfig`` variable, containing the default configuration. Should be
passed to ``ConfigParser.read_dict`` to define sane default values.
"""
defaultconfig = {
    "DEFAULT": {
        "conf": "",
    },
    "grid": {
        "n_interior": 199,
    },
    "time": {
        "dt": 1e-3,
        "observe_stride": 100,
    },
    "analysis": {
        "search_max": 1000.0,
        "q_horizon": 500.0,
        "q_factor": 0.05,
        "scan_dt": 1e-3,
        "window": 10.0,
        "cap": 1000.0,
        "samples": 200,
        "seed": 0,
        "radius_points": 25,
    },
    "verdict": {
        "tol_abs": 1e-8,
        "tol_rel": 1e-6,
    },
    "output": {
        "dir": ".",
        "parallel": 1,
    },
    "logger": {
        "level": "INFO",
        "file": "",
    },
}
