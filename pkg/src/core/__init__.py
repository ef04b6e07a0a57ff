# Core module for quivers, path orders and path algebra elements
