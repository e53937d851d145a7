"""Ready-made parametrizations and synthetic topology generators."""

from .telco import TelcoAccumulation, TelcoParams, TelcoPolicy, generate_telco, telco_config
from .datacenter import (
    DatacenterAccumulation,
    DatacenterParams,
    DatacenterPolicy,
    datacenter_config,
    generate_datacenter,
)

__all__ = [
    "TelcoAccumulation",
    "TelcoParams",
    "TelcoPolicy",
    "generate_telco",
    "telco_config",
    "DatacenterAccumulation",
    "DatacenterParams",
    "DatacenterPolicy",
    "datacenter_config",
    "generate_datacenter",
]
