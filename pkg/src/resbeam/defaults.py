"""Reference parameter set used when nothing else is configured.

Transmitter: 808 nm diode side-pumped Nd:YAG rod lasing at 1064 nm with a
measured thermal-lens focal length of 880 mm and a 60 mm transmitter size.
Receiver: output mirror reflectivity 0.88 behind a photovoltaic panel fitted
by p_pv = 0.3487*p_beam - 1.535 W at its maximum power point.
"""

DEFAULT_L = 0.06            # m, gain medium to M1
DEFAULT_F = 0.88            # m, thermal lens focal length
DEFAULT_R1 = -1.0           # m, signed curvature of M1
# Through-origin receiver curvature for (l, f, r1) above; the stable distance
# range is then contiguous up to ~10.43 m.  Equals 1/(c0*(1/f + c0/r1)).
DEFAULT_R2 = 5.246612466124661
DEFAULT_D = 1.0             # m, transmission distance
DEFAULT_WAVELENGTH = 1.064e-6

# Effective aperture radius (m).  Never measured directly; calibrated once so
# the stored-to-beam efficiency at d = 1 m, p_stored = 30 W comes out at 0.61,
# which pins f(1 m) = 0.798.
DEFAULT_APERTURE = 7.855301511370797e-4

DEFAULT_ETA_STORED = 0.2849
DEFAULT_M_OVERLAP = 1.0
DEFAULT_C = -5.64           # W
DEFAULT_R_OUT = 0.88
DEFAULT_A1 = 0.3487
DEFAULT_B1 = -1.535         # W
