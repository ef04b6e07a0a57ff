# Frontend module for problem files, printers and the command line
