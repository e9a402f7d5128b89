int ordclust_placeholder_acceptance = 0;
