"""
Simulation lab: data generators and experiment runners.
"""
