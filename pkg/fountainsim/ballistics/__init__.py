from .constants import PhysicalConstants, CESIUM
from .launch import LaunchConfig, TransitRecord, launch_speed_from_aom_offset, transit
from .cloud import (AtomSample, CloudArrays, sample_cloud, sample_cloud_arrays, survival, survival_fraction,
                    transit_arrays, transit_table, TRANSIT_COLUMNS)
