"""Square-grid partition of the study region and its cell network."""
