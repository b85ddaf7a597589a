"""
Test suite for hka-credit.

Closed forms are checked against limits, identities and the Monte Carlo
oracle; the command line is exercised end to end with a recording IO stub.
"""
