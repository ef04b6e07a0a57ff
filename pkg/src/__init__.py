# Path algebra Groebner source package
