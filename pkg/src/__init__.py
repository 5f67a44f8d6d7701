"""polypart - exact counting and numerical checks for partitions into polynomial parts."""
