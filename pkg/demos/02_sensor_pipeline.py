"""From glove bytes to Newtons: frames, calibration, and the emulator.

The glove sends ASCII lines with a 10-bit ADC count per channel and an XOR
checksum. Calibration fits a power law force = a * volts^b from measured
points, and the emulator runs the same map backwards so the whole pipeline
can be exercised without hardware.
"""

from weightsim.sensor import (
    FrameChecksumError,
    FsrEmulatorModel,
    SensorFrame,
    adc_to_force,
    adc_to_voltage,
    emulate_frames,
    encode_frame,
    fit_calibration,
    parse_frame,
)

print(__doc__)

# Wire format round trip.
frame = SensorFrame(seq=7, time_ms=1250, thumb_adc=512, palm_adc=300)
line = encode_frame(frame)
print(f"encoded:      {line!r}")
print(f"parsed back:  {parse_frame(line)}")

corrupted = line.replace(b"512", b"513")
try:
    parse_frame(corrupted)
except FrameChecksumError as exc:
    print(f"corrupted ->  rejected: {exc}")

# Calibration from synthetic bench measurements (true law: F = 2 * V^1.5).
points = [(adc, 2.0 * adc_to_voltage(adc) ** 1.5)
          for adc in (150, 300, 450, 600, 750, 900)]
model = fit_calibration(points, deadband_adc=20)
print(f"\nfitted power law: a={model.a:.6f}  b={model.b:.6f}  "
      f"(true a=2, b=1.5)")
for adc in (20, 128, 512, 1023):
    print(f"  adc {adc:4d} -> {adc_to_voltage(adc):.3f} V -> "
          f"{adc_to_force(adc, model):7.3f} N")

# Emulator: command forces, get frames, convert back.
emulator = FsrEmulatorModel(thumb=model, palm=model)
profile = [(t * 20.0, 0.5 + 0.1 * t, 0.0) for t in range(5)]
frames = emulate_frames(profile, emulator)
print("\ncommanded vs recovered thumb force (noiseless emulation):")
for (t, thumb_n, _), f in zip(profile, frames):
    print(f"  t={t:5.0f} ms commanded {thumb_n:.3f} N -> adc {f.thumb_adc:4d} "
          f"-> {adc_to_force(f.thumb_adc, model):.3f} N")
