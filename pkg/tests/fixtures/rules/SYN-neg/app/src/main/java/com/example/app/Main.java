package com.example.app;

import retrofit2.Call;
import retrofit2.Callback;
import retrofit2.Response;

public class Main {
    private final Net net;

    public Main(Net net) {
        this.net = net;
    }

    void load(Call<String> call) {
        if (!net.online()) {
            return;
        }
        call.enqueue(new Callback<String>() {
            @Override
            public void onResponse(Call<String> c, Response<String> response) {
                String body = response.body();
                if (body != null && response.code() == 200) {
                    show(body);
                }
            }

            @Override
            public void onFailure(Call<String> c, Throwable t) {
                show(t.getMessage());
            }
        });
    }

    void show(String text) {
        System.out.println(text);
    }
}
