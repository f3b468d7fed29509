// placeholder; module implemented later in the build
