# Groebner module for division, completion and membership
