int ordclust_placeholder_test_lmfcm = 0;
