"""Grand-Dyck lattices, coloured noncrossing partitions and signed permutations"""
