"""Domain types for points, rings, resolutions and Rees constructions."""
