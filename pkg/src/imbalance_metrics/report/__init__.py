"""All functionality concerned with presentation of the metrics, comparisons and grids."""
