"""
Opportunistic beamforming simulation toolkit.

Builds beamforming matrices with more beams than transmit antennas (Fourier,
Grassmannian/harmonic and MUB constructions), simulates the SINR-feedback scheduling
loop over Rayleigh fading and evaluates the extreme-value throughput analysis.
"""

__version__ = "0.1.0"
