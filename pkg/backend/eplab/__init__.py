"""eplab: EP operators, Moore-Penrose inverses and Fuglede-Putnam type theorem checks"""
