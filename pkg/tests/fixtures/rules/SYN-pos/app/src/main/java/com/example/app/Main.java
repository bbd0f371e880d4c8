package com.example.app;

import java.io.IOException;
import retrofit2.Call;
import retrofit2.Response;

public class Main {
    private final Net net;

    public Main(Net net) {
        this.net = net;
    }

    String load(Call<String> call) {
        if (!net.online()) {
            return null;
        }
        try {
            Response<String> response = call.execute();
            if (response.code() != 200) {
                return null;
            }
            String body = response.body();
            if (body == null) {
                return null;
            }
            return body;
        } catch (IOException e) {
            return null;
        }
    }
}
