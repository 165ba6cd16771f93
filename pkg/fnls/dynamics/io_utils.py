import os

from fnls.dynamics.integrator import Trajectory
from fnls.spectral.io_utils import write_field
from fnls.utils.io_utils import save_csv


def export_trajectory(traj: Trajectory, directory: str, fields: bool = True) -> list:
    """Write trajectory.csv and one text dump per snapshot; return the written paths."""
    written = []
    csv_path = os.path.join(directory, "trajectory.csv")
    save_csv(csv_path, traj.to_frame())
    written.append(csv_path)
    if fields:
        for i, snap in enumerate(traj.snapshots):
            path = os.path.join(directory, "snapshots", f"snapshot_{i:04d}.txt")
            write_field(path, snap)
            written.append(path)
    return written
