"""How fast does the exact g2(0) approach the weak-drive closed form as s -> 0?

Prints the relative deviation for a few eta values over a range of saturation
parameters, at resonance.
"""

import numpy as np

from dipolewave import AtomParams, DetectionChannel, DriveAmplitude, g2_exact, weak_drive_g2

ETAS = [0.0, 0.5, 1.0, 3.0, 4.0, 6.0, 10.0, 1 + 1j]
SATURATIONS = np.logspace(-6, 0, 7)


def main():
    channel = DetectionChannel()
    params = AtomParams()
    print("eta".ljust(10) + "".join(f"s={s:.0e}".rjust(12) for s in SATURATIONS))
    for eta in ETAS:
        closed = weak_drive_g2(eta)
        devs = []
        for s in SATURATIONS:
            exact = g2_exact(channel, eta, DriveAmplitude.from_saturation(s), params)
            devs.append(abs(exact - closed) / max(closed, 1.0))
        print(f"{eta!s:<10}" + "".join(f"{d:12.2e}" for d in devs))


if __name__ == "__main__":
    main()
