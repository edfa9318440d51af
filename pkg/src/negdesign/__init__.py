"""negdesign: bans on design problems, the nategory kernel that checks them and lower-bound propagation on weighted digraphs"""
